"""Explore how the subset-level divergence reacts to focal-set structure.

Two experiments:

1. A variable two-focal assignment against a fixed one, sweeping the mass
   split (alpha) and the size of the shared compound focal set.  The
   divergence vanishes where the assignments coincide and grows smoothly
   with both kinds of difference.
2. A spread-out assignment against a categorical five-event block, sweeping
   a span focal set across it.  The divergence bottoms out exactly where
   the span matches the block, and climbs more gently afterwards because a
   wider span changes the per-event commitments less and less.

Writes two TSV tables next to this script and, when matplotlib is
available, a PNG with both curves.

Run:  python demos/divergence_landscape.py
"""

from pathlib import Path

from credfuse import span_imbalance_grid, span_overlap_series
from credfuse.documents import format_table

HERE = Path(__file__).parent


def main():
    grid = span_imbalance_grid()
    grid_path = HERE / "span_imbalance_grid.tsv"
    grid_path.write_text(format_table(["t", "alpha", "value"], grid, precision=6))
    print(f"wrote {grid_path} ({len(grid)} rows)")

    low_alpha = [v for t, alpha, v in grid if alpha == 0.05]
    print("\ndivergence at alpha=0.05 (largest mass disagreement):")
    for t, value in enumerate(low_alpha, start=1):
        bar = "#" * int(value * 400)
        print(f"  span t={t:2d}: {value:.4f} {bar}")
    print("peaks at t=1 (disjoint singletons), then grows with span size")

    series = span_overlap_series()
    series_path = HERE / "span_overlap_series.tsv"
    series_path.write_text(format_table(["t", "value"], series, precision=6))
    print(f"\nwrote {series_path}")

    print("\ndivergence against the five-event block:")
    for t, value in series:
        bar = "#" * int(value * 400)
        print(f"  span t={t:2d}: {value:.4f} {bar}")
    print("minimum sits at t=5 where the span matches the block exactly")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("\nmatplotlib not installed; skipping the figure")
        return

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    for alpha in (0.05, 0.35, 0.65, 0.95):
        values = [v for t, a, v in grid if a == alpha]
        ax1.plot(range(1, 11), values, marker="o", label=f"alpha={alpha:.2f}")
    ax1.set_xlabel("span size t")
    ax1.set_ylabel("divergence")
    ax1.set_title("two-focal pair")
    ax1.legend()
    ax2.plot([t for t, _ in series], [v for _, v in series], marker="s", color="tab:red")
    ax2.set_xlabel("span size t")
    ax2.set_title("spread vs. five-event block")
    fig.tight_layout()
    out = HERE / "divergence_landscape.png"
    fig.savefig(out, dpi=120)
    print(f"\nwrote {out}")


if __name__ == "__main__":
    main()
