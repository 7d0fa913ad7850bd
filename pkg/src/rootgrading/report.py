"""Report rendering: a tab-delimited summary plus matplotlib figures.

For rank-2 relative systems the root diagram is drawn with exact integer
endpoints; higher ranks get a height-profile chart instead.  A fiber-size
chart is always produced.  Figures are written to files next to the
delimited report; nothing opens a display."""

from __future__ import annotations

import os

from . import catalog as cat
from .borel import SEPARABILITY_LINE_BUDGET, enumerate_borel_subsets
from .relroot import classify_type


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def render_report(entry, out_dir):
    """Write <entry>_report.tsv plus the figures; returns the file list."""
    os.makedirs(out_dir, exist_ok=True)
    proj, rel = cat.resolve(entry)
    produced = []
    tsv_path = os.path.join(out_dir, "%s_report.tsv" % entry.name)
    with open(tsv_path, "w", encoding="utf-8") as fh:
        _write_tsv(fh, entry, proj, rel)
    produced.append(tsv_path)
    roots_path = os.path.join(out_dir, "%s_roots.png" % entry.name)
    _render_root_figure(rel, entry, roots_path)
    produced.append(roots_path)
    fibers_path = os.path.join(out_dir, "%s_fibers.png" % entry.name)
    _render_fiber_figure(rel, entry, fibers_path)
    produced.append(fibers_path)
    return produced


def _write_tsv(fh, entry, proj, rel):
    types = classify_type(rel)
    comp_of = {}
    for ci, ct in enumerate(types):
        for r in ct.component:
            comp_of[r] = (ci, ct.label)

    def line(*cells):
        fh.write("\t".join(str(c) for c in cells) + "\n")

    line("entry", entry.name)
    line("ambient", "%s%d" % (entry.series, entry.rank))
    line("gamma", entry.gamma_label)
    line("J", "all" if entry.J_spec == "all" else " ".join(map(str, entry.J_spec)))
    line("relative_type", " x ".join(ct.label for ct in types))
    line("relative_root_count", len(rel.elements))
    line("zero_fiber_size", len(proj.zero_fiber))
    if len(rel.lines()) <= SEPARABILITY_LINE_BUDGET:
        fam = enumerate_borel_subsets(rel, "separability")
        line("borel_subset_count", len(fam))
    else:
        line("borel_subset_count", "skipped (use the borel command)")
    line("")
    line("root", "height", "fiber_size", "component", "component_type")
    for r in rel.elements:
        ci, label = comp_of[r]
        line(" ".join(map(str, r)), sum(r), len(rel.fiber(r)), ci, label)


def _render_root_figure(rel, entry, path):
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    if rel.rank == 2:
        for r in rel.elements:
            ax.annotate("", xy=r, xytext=(0, 0),
                        arrowprops=dict(arrowstyle="->", color="tab:blue", lw=1.2))
            ax.annotate("(%d,%d)" % r, xy=r, fontsize=7,
                        xytext=(r[0] * 1.12, r[1] * 1.12), ha="center")
        bound = max(abs(c) for r in rel.elements for c in r) + 1
        ax.set_xlim(-bound, bound)
        ax.set_ylim(-bound, bound)
        ax.set_aspect("equal")
        ax.axhline(0, color="0.8", lw=0.5)
        ax.axvline(0, color="0.8", lw=0.5)
        ax.set_title("%s: relative roots" % entry.name)
    elif rel.rank == 1:
        xs = sorted(r[0] for r in rel.elements)
        ax.stem(xs, [1] * len(xs))
        ax.set_ylim(0, 2)
        ax.set_title("%s: relative roots on the line" % entry.name)
    else:
        heights = sorted(sum(r) for r in rel.elements)
        counts = {}
        for h in heights:
            counts[h] = counts.get(h, 0) + 1
        ax.bar(list(counts.keys()), list(counts.values()), color="tab:blue")
        ax.set_xlabel("height")
        ax.set_ylabel("roots")
        ax.set_title("%s: height profile" % entry.name)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _render_fiber_figure(rel, entry, path):
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 3.2))
    sizes = [len(rel.fiber(r)) for r in rel.elements]
    ax.bar(range(len(sizes)), sizes, color="tab:orange")
    ax.set_xlabel("relative root (canonical order)")
    ax.set_ylabel("fiber size")
    ax.set_title("%s: fiber sizes" % entry.name)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
