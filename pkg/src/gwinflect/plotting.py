"""Figure rendering for the report paths (sweep and Sato-Tate histogram).

Everything upstream is exact; floats appear here only to place marks on
the canvas.  Files are written through the Agg backend so the CLI works
headless.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_sweep(result, path):
    """Real-root counts along the modular parameter, with the locus marked."""
    fig, ax = plt.subplots(figsize=(7, 4))
    sampled = [(float(e.a), e.root_count) for e in result.entries if not e.excluded]
    if sampled:
        xs, ys = zip(*sampled)
        ax.step(xs, ys, where="post", marker="o", lw=1.2, label="real roots of P_n")
    excluded = [float(e.a) for e in result.entries if e.excluded]
    for x in excluded:
        ax.axvline(x, color="crimson", ls=":", lw=1, alpha=0.7)
    for rho in result.separability_locus:
        ax.axvline(rho.approx(), color="gray", ls="--", lw=1)
    ax.axvline(-3.0, color="black", lw=0.8, alpha=0.5)
    ax.set_xlabel("a  (fiber y^2 = x^3 + a x + 2)")
    ax.set_ylabel("# real roots")
    ax.set_title(f"n = {result.n}: real inflection roots over the j-line")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_histogram(histogram, path, n=2):
    """Bar chart of the renormalized error distribution."""
    fig, ax = plt.subplots(figsize=(6, 4))
    lefts = [float(lo) for lo, _, _ in histogram]
    widths = [float(hi) - float(lo) for lo, hi, _ in histogram]
    freqs = [f for _, _, f in histogram]
    ax.bar(lefts, freqs, width=widths, align="edge", edgecolor="white", lw=0.4)
    ax.set_xlabel("e / (2 (2n-1)(2n-2) sqrt(p))")
    ax.set_ylabel("frequency")
    ax.set_title(f"renormalized point-count errors, n = {n} (split primes)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
