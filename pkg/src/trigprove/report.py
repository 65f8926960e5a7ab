"""Figure and TSV rendering for proof runs. Diagnostics only: everything
here works in floats and never feeds back into the proof path."""

from __future__ import annotations

import csv
import math
from pathlib import Path

from .pipoly import PiPoly
from .problems import ProblemSpec, eval_float, print_problem


def _pipoly_float(c: PiPoly) -> float:
    return sum(float(a) * math.pi**i for i, a in enumerate(c.coeffs))


def _unipoly_float(u, x: float) -> float:
    acc = 0.0
    for c in reversed(u.coeffs):
        acc = acc * x + _pipoly_float(c)
    return acc


def render_report(spec: ProblemSpec, outcome, out_dir: Path) -> dict[str, Path]:
    """Write a figure of f against its polynomial lower bounds, plus TSV
    tables of the search attempts and the outcome summary."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths: dict[str, Path] = {}

    lo = _pipoly_float(spec.lo)
    hi = _pipoly_float(spec.hi)
    xs = [lo + (hi - lo) * i / 600 for i in range(1, 600)]

    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(xs, [eval_float(spec.f, x) for x in xs], label="f", lw=1.8)
    for idx, step in enumerate(outcome.steps):
        a = _pipoly_float(step.x_lo)
        b = _pipoly_float(step.x_hi)
        pts = [a + (b - a) * i / 200 for i in range(201)]
        if step.reflect_center is None:
            ys = [_unipoly_float(step.piece.polynomial, x) for x in pts]
        else:
            c = _pipoly_float(step.reflect_center)
            ys = [_unipoly_float(step.piece.polynomial, c - x) for x in pts]
        ax.plot(pts, ys, "--", lw=1.2, label=f"P (step {idx})")
        if idx > 0:
            ax.axvline(a, color="grey", lw=0.8, ls=":")
    ax.axhline(0.0, color="black", lw=0.8)
    ax.set_xlabel("x")
    ax.set_title(f"{outcome.verdict}: {print_problem(spec)}"[:110])
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    figure_path = out_dir / "bounds.png"
    fig.savefig(figure_path, dpi=140)
    plt.close(fig)
    paths["figure"] = figure_path

    attempts_path = out_dir / "attempts.tsv"
    fields = ["piece", "stage", "K", "degrees", "outcome", "detail", "root",
              "order", "sign", "at", "mode", "K2"]
    with attempts_path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields, delimiter="\t",
                                extrasaction="ignore")
        writer.writeheader()
        for d in outcome.diagnostics:
            writer.writerow({k: d.get(k, "") for k in fields})
    paths["attempts"] = attempts_path

    summary_path = out_dir / "summary.tsv"
    with summary_path.open("w", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t")
        writer.writerow(["key", "value"])
        writer.writerow(["problem", print_problem(spec)])
        writer.writerow(["verdict", outcome.verdict])
        writer.writerow(["steps", len(outcome.steps)])
        if outcome.witness is not None:
            writer.writerow(["witness_point", str(outcome.witness.point)])
            writer.writerow(["witness_value_bound", str(outcome.witness.value_hi)])
        for idx, step in enumerate(outcome.steps):
            writer.writerow([
                f"step_{idx}_domain",
                f"[{step.x_lo.show()}, {step.x_hi.show()}]",
            ])
            writer.writerow([
                f"step_{idx}_reflected",
                "no" if step.reflect_center is None else "yes",
            ])
            writer.writerow([f"step_{idx}_degrees",
                             " ".join(str(r.degree) for r in step.piece.rows)])
    paths["summary"] = summary_path

    if outcome.certificate is not None:
        cert_path = out_dir / "proof.cert.json"
        cert_path.write_bytes(outcome.certificate)
        paths["certificate"] = cert_path
    return paths
