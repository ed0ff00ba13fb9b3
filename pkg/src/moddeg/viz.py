"""Report rendering: CSV class tables, DOT Hasse diagrams, PNG figures.

Figures are written next to the delimited output whenever a command gets
--report-dir; matplotlib runs on the Agg backend so no display is needed.
"""

from __future__ import annotations

import csv
import io
import os

from .modrep import hom_space


def hom_order_relation(classes):
    """Pairs (i, j) with class_i <=Hom class_j w.r.t. the full rep family."""
    reps = [c.module for c in classes]
    profiles = []
    for m in reps:
        into = tuple(hom_space(x, m).k_dim for x in reps)
        out_of = tuple(hom_space(m, x).k_dim for x in reps)
        profiles.append((into, out_of))
    leq = {}
    for i in range(len(reps)):
        for j in range(len(reps)):
            if reps[i].dim != reps[j].dim:
                continue
            leq[(i, j)] = all(a <= b for a, b in
                              zip(profiles[i][0], profiles[j][0])) and \
                all(a <= b for a, b in zip(profiles[i][1], profiles[j][1]))
    return leq


def hasse_edges(classes):
    """Transitive reduction of the Hom-order on the enumerated classes."""
    leq = hom_order_relation(classes)
    n = len(classes)
    edges = []
    for i in range(n):
        for j in range(n):
            if i == j or not leq.get((i, j)):
                continue
            if leq.get((j, i)):
                continue  # same Hom profile both ways, no strict edge
            if any(leq.get((i, k)) and leq.get((k, j))
                   and not leq.get((k, i)) and not leq.get((j, k))
                   for k in range(n) if k not in (i, j)):
                continue
            edges.append((i, j))
    return edges


def classes_csv(space):
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["class", "dim", "size", "name"])
    for idx, cls in enumerate(space.classes):
        writer.writerow([idx, cls.module.dim, cls.size,
                         cls.module.name or f"class{idx}"])
    return buf.getvalue()


def hasse_dot(space, edges=None):
    edges = hasse_edges(space.classes) if edges is None else edges
    lines = ["digraph hom_order {", "  rankdir=BT;"]
    for idx, cls in enumerate(space.classes):
        label = cls.module.name or f"class{idx}"
        lines.append(f'  n{idx} [label="{label}\\nsize {cls.size}"];')
    for i, j in edges:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _heights(n, edges):
    incoming = {j for _, j in edges}
    height = {i: 0 for i in range(n)}
    changed = True
    while changed:
        changed = False
        for i, j in edges:
            if height[j] < height[i] + 1:
                height[j] = height[i] + 1
                changed = True
    return height


def hasse_png(space, path, edges=None):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    edges = hasse_edges(space.classes) if edges is None else edges
    n = len(space.classes)
    height = _heights(n, edges)
    layers = {}
    pos = {}
    for i in range(n):
        h = height[i]
        layers.setdefault(h, []).append(i)
    for h, members in sorted(layers.items()):
        for k, i in enumerate(members):
            pos[i] = (k - (len(members) - 1) / 2.0, h)
    fig, ax = plt.subplots(figsize=(max(4, n * 1.2), max(3, 1.5 * (1 + max(
        height.values(), default=0)))))
    for i, j in edges:
        x0, y0 = pos[i]
        x1, y1 = pos[j]
        ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                    arrowprops=dict(arrowstyle="->", color="gray"))
    for i in range(n):
        x, y = pos[i]
        label = space.classes[i].module.name or f"class{i}"
        ax.plot([x], [y], "o", color="steelblue", markersize=18)
        ax.annotate(f"{label}\n({space.classes[i].size})", (x, y),
                    ha="center", va="center", fontsize=7)
    ax.set_title(f"Hom-order on module classes, dim {space.dim}")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def enumeration_report(space, report_dir):
    os.makedirs(report_dir, exist_ok=True)
    edges = hasse_edges(space.classes)
    csv_path = os.path.join(report_dir, f"classes_d{space.dim}.csv")
    dot_path = os.path.join(report_dir, f"hasse_d{space.dim}.dot")
    png_path = os.path.join(report_dir, f"hasse_d{space.dim}.png")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(classes_csv(space))
    with open(dot_path, "w", encoding="utf-8") as fh:
        fh.write(hasse_dot(space, edges))
    hasse_png(space, png_path, edges)
    return [csv_path, dot_path, png_path]


def twist_closure_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["dim", "classes", "structures"])
    for space in report.spaces:
        writer.writerow([space.dim, len(space.classes),
                         space.total_structures])
    writer.writerow([])
    writer.writerow(["finding", "value"])
    writer.writerow(["twist_stable", report.twist_stable])
    writer.writerow(["iso_classes_match", report.lambda_iso_equals_gamma_iso])
    writer.writerow(["hypothesis_consistent", report.hypothesis_consistent])
    writer.writerow(["hom_order_match", report.hom_order_match])
    writer.writerow(["hom_identity_lambda_gamma",
                     report.hom_identity_lambda_gamma])
    writer.writerow(["hom_identity_base_change",
                     report.hom_identity_base_change])
    return buf.getvalue()


def twist_closure_report(report, report_dir):
    os.makedirs(report_dir, exist_ok=True)
    csv_path = os.path.join(report_dir, "twist_closure.csv")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(twist_closure_csv(report))
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    dims = [s.dim for s in report.spaces]
    counts = [len(s.classes) for s in report.spaces]
    sizes = [s.total_structures for s in report.spaces]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([d - 0.18 for d in dims], counts, width=0.35, label="classes")
    ax.bar([d + 0.18 for d in dims], sizes, width=0.35, label="structures")
    ax.set_xlabel("dimension")
    ax.set_xticks(dims)
    ax.legend()
    flag = "stable" if report.twist_stable else "unstable"
    ax.set_title(f"Twist closure (degree {report.tower_degree}, {flag})")
    fig.tight_layout()
    png_path = os.path.join(report_dir, "twist_closure.png")
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return [csv_path, png_path]


def suite_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["case", "check", "passed", "expected", "actual",
                     "basis"])
    for case, checks in report.cases.items():
        for c in checks:
            writer.writerow([case, c.name, c.passed, c.expected, c.actual,
                             c.basis])
    return buf.getvalue()


def suite_report(report, report_dir):
    os.makedirs(report_dir, exist_ok=True)
    csv_path = os.path.join(report_dir, "suite.csv")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(suite_csv(report))
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    cases = list(report.cases)
    passed = [sum(1 for c in report.cases[k] if c.passed) for k in cases]
    failed = [sum(1 for c in report.cases[k] if not c.passed) for k in cases]
    fig, ax = plt.subplots(figsize=(7, 4))
    xs = range(len(cases))
    ax.bar(xs, passed, color="seagreen", label="passed")
    ax.bar(xs, failed, bottom=passed, color="firebrick", label="failed")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(cases, rotation=30, ha="right")
    ax.set_ylabel("checks")
    ax.set_title("Case suite results")
    ax.legend()
    fig.tight_layout()
    png_path = os.path.join(report_dir, "suite.png")
    fig.savefig(png_path, dpi=120)
    plt.close(fig)
    return [csv_path, png_path]
