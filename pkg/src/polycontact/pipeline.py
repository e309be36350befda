"""End-to-end countermodel synthesis and certificate checking.

``synthesize`` drives the whole chain for a non-theorem: find a finite
connected adjacency countermodel, untie it to an acyclic preimage carrying
the valuation backwards along the collapsing map, project the acyclic space
onto cylinders over the line, and merge cell sets into polytopes, so the
formula is falsified by an explicit geometric valuation.  Falsity is
re-checked at the discrete, untied and geometric stages; a failure at any
stage aborts with the name of the violated identity (it would indicate a
bug, not a property of the input).

The resulting certificate serialises to a line-oriented text bundle that
round-trips through ``parse_certificate`` and re-verifies from scratch with
``verify``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import logic as lg
from .adjacency import (
    AdjacencySpace,
    PMorphism,
    arrangement,
    check_pmorphism,
    format_space,
    numeration,
    parse_space,
    project,
    untie,
)
from .algebra import AuditEntry, AuditReport, CylinderAlgebra, induced_algebra, merge
from .cylinder import CylinderPolytope, format_cylinder, lift, parse_cylinder
from .intervals import EMPTY as EMPTY_LINE

Valuation = dict[str, frozenset[str]]


class PipelineError(RuntimeError):
    """A stage identity failed while building a certificate."""


@dataclass
class CountermodelCertificate:
    formula_text: str
    formula: lg.Formula
    dim: int
    discrete_space: AdjacencySpace
    discrete_valuation: Valuation
    untied_space: AdjacencySpace
    collapse: PMorphism
    untied_valuation: Valuation
    images: dict[str, CylinderPolytope]
    geometric_valuation: dict[str, CylinderPolytope]
    verdicts: dict[str, bool]


def _eval_discrete(formula: lg.Formula, space: AdjacencySpace,
                   valuation: Valuation) -> bool:
    algebra = induced_algebra(space)
    masks = {name: algebra.element_of(cells) for name, cells in valuation.items()}
    return lg.evaluate(formula, algebra, masks)


def _union_image(cells: frozenset[str], images: dict[str, CylinderPolytope],
                 dim: int) -> CylinderPolytope:
    out = lift(EMPTY_LINE, dim)
    for cell in sorted(cells):
        out = out.union(images[cell])
    return out


def synthesize(formula: lg.Formula | str, max_cells: int, dim: int = 1
               ) -> Optional[CountermodelCertificate]:
    """Build a geometric countermodel certificate, or None if the search
    up to ``max_cells`` cells finds no discrete countermodel."""
    text = formula if isinstance(formula, str) else lg.format_formula(formula)
    parsed = lg.parse(text)
    if dim < 1:
        raise ValueError("ambient dimension must be >= 1")

    found = lg.find_countermodel(parsed, max_cells)
    if found is None:
        return None
    space, valuation = found
    if _eval_discrete(parsed, space, valuation):
        raise PipelineError("discrete countermodel re-evaluated to true")

    untied, collapse = untie(space)
    if not check_pmorphism(collapse, untied, space):
        raise PipelineError("untying did not produce a p-morphism")
    lifted: Valuation = {
        name: frozenset(x for x in untied.cells if collapse(x) in cells)
        for name, cells in valuation.items()}
    for name, cells in lifted.items():
        for x in untied.cells:
            if (x in cells) != (collapse(x) in valuation[name]):
                raise PipelineError(
                    "valuation lift violated the preimage condition")
    if _eval_discrete(parsed, untied, lifted):
        raise PipelineError(
            "formula became true in the untied preimage (truth transfer failed)")

    root = min(untied.cells)
    walk = arrangement(untied, numeration(untied, root))
    images = project(untied, walk, dim)

    geometric = {name: _union_image(cells, images, dim)
                 for name, cells in lifted.items()}
    algebra = CylinderAlgebra(dim)
    if lg.evaluate(parsed, algebra, geometric):
        raise PipelineError(
            "formula became true under the merged polytope valuation")

    verdicts = {"discrete": False, "untied": False, "geometric": False}
    return CountermodelCertificate(
        formula_text=text, formula=parsed, dim=dim,
        discrete_space=space, discrete_valuation=valuation,
        untied_space=untied, collapse=collapse, untied_valuation=lifted,
        images=images, geometric_valuation=geometric, verdicts=verdicts)


def verify(cert: CountermodelCertificate) -> AuditReport:
    """Re-run every stage check of a certificate independently."""
    report = AuditReport()

    def add(name: str, passed: bool, witness: str = ""):
        report.entries.append(AuditEntry(name, passed, witness if not passed else ""))

    formula = lg.parse(cert.formula_text)
    add("formula-matches", formula == cert.formula)

    add("discrete-eval-false",
        not _eval_discrete(formula, cert.discrete_space, cert.discrete_valuation))

    add("pmorphism",
        check_pmorphism(cert.collapse, cert.untied_space, cert.discrete_space))

    lift_witness = next(
        ((name, x) for name, cells in cert.untied_valuation.items()
         for x in cert.untied_space.cells
         if (x in cells) != (cert.collapse(x) in cert.discrete_valuation[name])),
        None)
    add("valuation-lift", lift_witness is None, f"at {lift_witness}")

    add("untied-eval-false",
        not _eval_discrete(formula, cert.untied_space, cert.untied_valuation))

    cells = cert.untied_space.cells
    image_ok = set(cert.images) == set(cells)
    add("images-cover-cells", image_ok)
    if image_ok:
        total = _union_image(frozenset(cells), cert.images, cert.dim)
        add("images-cover-line", total.is_all())
        overlap_witness = next(
            ((x, y) for i, x in enumerate(cells) for y in cells[i + 1:]
             if cert.images[x].overlap(cert.images[y])), None)
        add("images-non-overlapping", overlap_witness is None, f"{overlap_witness}")

        merged = merge(cert.images, space=cert.untied_space)
        for entry in merged.report.entries:
            report.entries.append(AuditEntry(
                "merging-" + entry.name, entry.passed, entry.witness))

        geo_witness = next(
            (name for name, cells_ in cert.untied_valuation.items()
             if not cert.geometric_valuation[name].equals(
                 _union_image(cells_, cert.images, cert.dim))), None)
        add("geometric-valuation-is-merged-union", geo_witness is None,
            f"variable {geo_witness}")

    add("geometric-eval-false",
        not lg.evaluate(formula, CylinderAlgebra(cert.dim), cert.geometric_valuation))

    return report


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

class CertificateFormatError(ValueError):
    pass


def serialize_certificate(cert: CountermodelCertificate) -> str:
    lines = ["certificate {"]
    lines.append(f"formula: {cert.formula_text}")
    lines.append(f"dim: {cert.dim}")
    lines.append("discrete {")
    lines.append(f"space: {format_space(cert.discrete_space)}")
    for name in sorted(cert.discrete_valuation):
        cells = " ".join(sorted(cert.discrete_valuation[name]))
        lines.append(f"val {name}: {cells}".rstrip())
    lines.append("}")
    lines.append("untied {")
    lines.append(f"space: {format_space(cert.untied_space)}")
    for src, dst in cert.collapse.pairs:
        lines.append(f"map {src}: {dst}")
    for name in sorted(cert.untied_valuation):
        cells = " ".join(sorted(cert.untied_valuation[name]))
        lines.append(f"val {name}: {cells}".rstrip())
    lines.append("}")
    lines.append("images {")
    for cell in sorted(cert.images):
        lines.append(f"cell {cell}: {format_cylinder(cert.images[cell])}")
    lines.append("}")
    lines.append("geometric {")
    for name in sorted(cert.geometric_valuation):
        lines.append(f"var {name}: {format_cylinder(cert.geometric_valuation[name])}")
    lines.append("}")
    lines.append("verdicts {")
    for stage in ("discrete", "untied", "geometric"):
        lines.append(f"verdict {stage}: {str(cert.verdicts[stage]).lower()}")
    lines.append("}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> CountermodelCertificate:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "certificate {" or lines[-1] != "}":
        raise CertificateFormatError("expected 'certificate { ... }'")
    body = lines[1:-1]

    formula_text: Optional[str] = None
    dim: Optional[int] = None
    section = None
    spaces: dict[str, AdjacencySpace] = {}
    valuations: dict[str, Valuation] = {"discrete": {}, "untied": {}}
    mapping: dict[str, str] = {}
    images: dict[str, CylinderPolytope] = {}
    geometric: dict[str, CylinderPolytope] = {}
    verdicts: dict[str, bool] = {}

    for line in body:
        if line.endswith("{") and line[:-1].strip() in (
                "discrete", "untied", "images", "geometric", "verdicts"):
            section = line[:-1].strip()
            continue
        if line == "}":
            section = None
            continue
        if section is None:
            if line.startswith("formula:"):
                formula_text = line[len("formula:"):].strip()
            elif line.startswith("dim:"):
                dim = int(line[len("dim:"):].strip())
            else:
                raise CertificateFormatError(f"unexpected line {line!r}")
            continue
        if section in ("discrete", "untied"):
            if line.startswith("space:"):
                spaces[section] = parse_space(line[len("space:"):].strip())
            elif line.startswith("val "):
                head, _, rest = line[len("val "):].partition(":")
                valuations[section][head.strip()] = frozenset(rest.split())
            elif section == "untied" and line.startswith("map "):
                head, _, rest = line[len("map "):].partition(":")
                mapping[head.strip()] = rest.strip()
            else:
                raise CertificateFormatError(f"unexpected line {line!r} in {section}")
        elif section == "images":
            if not line.startswith("cell "):
                raise CertificateFormatError(f"unexpected line {line!r} in images")
            head, _, rest = line[len("cell "):].partition(":")
            images[head.strip()] = parse_cylinder(rest.strip())
        elif section == "geometric":
            if not line.startswith("var "):
                raise CertificateFormatError(f"unexpected line {line!r} in geometric")
            head, _, rest = line[len("var "):].partition(":")
            geometric[head.strip()] = parse_cylinder(rest.strip())
        elif section == "verdicts":
            if not line.startswith("verdict "):
                raise CertificateFormatError(f"unexpected line {line!r} in verdicts")
            head, _, rest = line[len("verdict "):].partition(":")
            verdicts[head.strip()] = rest.strip() == "true"

    if formula_text is None or dim is None:
        raise CertificateFormatError("missing formula or dim")
    if "discrete" not in spaces or "untied" not in spaces:
        raise CertificateFormatError("missing a space section")
    return CountermodelCertificate(
        formula_text=formula_text, formula=lg.parse(formula_text), dim=dim,
        discrete_space=spaces["discrete"], discrete_valuation=valuations["discrete"],
        untied_space=spaces["untied"], collapse=PMorphism.of(mapping),
        untied_valuation=valuations["untied"], images=images,
        geometric_valuation=geometric, verdicts=verdicts)
