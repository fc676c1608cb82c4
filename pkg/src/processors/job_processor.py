"""
Processamento de documentos de tarefa do forca.

Valida o documento JSON (campos desconhecidos são rejeitados), despacha para
exatamente uma operação do motor, reverifica toda testemunha antes de montar
o relatório e compara o resultado com o bloco `expect` das entradas do corpus.
"""

import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence

from sympy.polys.rings import PolyElement

from src.algebra.fields import CoefficientError, CoefficientField
from src.algebra.parser import PolynomialSyntaxError, format_polynomial
from src.algebra.polynomials import (
    INHOMOGENEOUS,
    Grading,
    GradingError,
    PointAssignment,
    substitute,
)
from src.algebra.rings import RingMismatchError, RingPresentation
from src.cech.cocycles import (
    CechCocycle,
    CocycleError,
    cech_to_forcing,
    check_cocycle,
    is_coboundary,
    localize_presentation,
    restrict_class,
    transition_check,
)
from src.charp.frobenius import (
    FrobeniusError,
    class_degree,
    degree_growth,
    equation_degrees,
    frobenius_member,
    relation_degrees,
    verify_level,
)
from src.config import ConfigError, EngineConfig, get_config, validate_order
from src.engine.groebner import EngineLimits
from src.engine.ideals import (
    IdealHandle,
    UnitIdealError,
    eliminate,
    groebner,
    ideal_member,
    is_unit_ideal,
    normal_form,
    radical_member,
)
from src.forcing.derivations import build_lnd, check_kernel_sample, nilpotency_index
from src.forcing.forcing_system import (
    ForcingError,
    ForcingSystem,
    fiber_at,
    has_section,
    is_surjective_over_base,
    verify_coaction,
)
from src.singular.jacobian import (
    CASE4_SINGULAR,
    FIELD_CAVEAT,
    base_dimension,
    SingularityError,
    case4_system,
    classify_point,
    jacobian,
    point_in_locus,
    singular_locus_ideal,
)

logger = logging.getLogger(__name__)

TRUE = "true"
FALSE = "false"

COMMON_FIELDS = {"task", "tag", "description", "ring", "expect"}
RING_FIELDS = {"variables", "characteristic", "relations", "order"}
FORCING_FIELDS = {"matrix", "vector", "generators", "f", "t_names"}
COCYCLE_FIELDS = {"generators", "m", "numerators"}
EXPECT_FIELDS = {"verdict", "details"}


class JobSchemaError(ValueError):
    """Exceção levantada quando o documento de tarefa não segue o esquema."""

    pass


class WitnessMismatchError(ArithmeticError):
    """Exceção levantada quando uma testemunha não se reverifica."""

    pass


def _verdict(value: bool) -> str:
    return TRUE if value else FALSE


def _format_degree(degree) -> str:
    if degree == INHOMOGENEOUS:
        return INHOMOGENEOUS
    if len(degree) == 1:
        return str(degree[0])
    return "(" + ",".join(str(d) for d in degree) + ")"


@dataclass
class JobDocument:
    """Documento de tarefa validado."""

    task: str
    payload: Dict[str, Any]
    ring: Optional[RingPresentation] = None
    tag: str = ""
    source: str = "<memória>"
    expect: Optional[Dict[str, Any]] = None

    @property
    def name(self) -> str:
        return Path(self.source).name


@dataclass
class Report:
    """
    Relatório de uma tarefa. duration_ms fica fora do JSON de máquina para
    que documentos e configuração iguais produzam relatórios idênticos.
    """

    task: str
    document: str
    tag: str
    verdict: str
    details: Dict[str, Any] = field(default_factory=dict)
    witnesses: Dict[str, Any] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    engine: Dict[str, Any] = field(default_factory=dict)
    ring: Optional[str] = None
    passed: Optional[bool] = None
    problems: List[str] = field(default_factory=list)
    duration_ms: float = 0.0

    def to_machine(self) -> dict:
        document = {
            "task": self.task,
            "document": self.document,
            "tag": self.tag,
            "ring": self.ring,
            "verdict": self.verdict,
            "details": self.details,
            "witnesses": self.witnesses,
            "warnings": self.warnings,
            "engine": self.engine,
        }
        if self.passed is not None:
            document["passed"] = self.passed
            document["problems"] = self.problems
        return document

    def to_text(self) -> str:
        lines = [f"[{self.task}] {self.document} {self.tag}".rstrip()]
        if self.ring:
            lines.append(f"  anel: {self.ring}")
        lines.append(f"  veredito: {self.verdict}")
        for key in sorted(self.details):
            lines.append(f"  {key}: {self.details[key]}")
        for key in sorted(self.witnesses):
            lines.append(f"  testemunha {key}: {self.witnesses[key]}")
        for warning in self.warnings:
            lines.append(f"  aviso: {warning}")
        if self.passed is not None:
            lines.append(f"  corpus: {'OK' if self.passed else 'FALHOU'}")
            for problem in self.problems:
                lines.append(f"    - {problem}")
        lines.append(f"  tempo: {self.duration_ms:.1f} ms")
        return "\n".join(lines)


# ----------------------------------------------------------------------
# Validação do esquema
# ----------------------------------------------------------------------


def _require(data: Mapping, key: str, kind, context: str):
    if key not in data:
        raise JobSchemaError(f"{context}: campo obrigatório ausente: {key!r}")
    value = data[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise JobSchemaError(f"{context}: campo {key!r} com tipo inválido")
    return value


def _check_fields(data: Mapping, allowed: set, context: str) -> None:
    if not isinstance(data, Mapping):
        raise JobSchemaError(f"{context}: esperado um objeto JSON")
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise JobSchemaError(f"{context}: campos desconhecidos: {unknown}")


def _string_list(data: Mapping, key: str, context: str, required: bool = True) -> List[str]:
    if key not in data and not required:
        return []
    values = _require(data, key, list, context)
    if not all(isinstance(v, (str, int)) and not isinstance(v, bool) for v in values):
        raise JobSchemaError(f"{context}: {key!r} deve ser uma lista de polinômios")
    return [str(v) for v in values]


def _parse_ring(
    data: Mapping, config: EngineConfig, characteristic: Optional[int], order: Optional[str]
) -> RingPresentation:
    _check_fields(data, RING_FIELDS, "ring")
    variables = _require(data, "variables", list, "ring")
    if not all(isinstance(v, str) for v in variables):
        raise JobSchemaError("ring: 'variables' deve ser uma lista de nomes")
    char = data.get("characteristic", 0)
    if not isinstance(char, int) or isinstance(char, bool):
        raise JobSchemaError("ring: 'characteristic' deve ser inteiro")
    if characteristic is not None:
        char = characteristic
    ring_order = order or data.get("order") or config.order
    try:
        validate_order(ring_order)
        return RingPresentation(
            variables,
            CoefficientField(char),
            _string_list(data, "relations", "ring", required=False),
            ring_order,
        )
    except (ConfigError, CoefficientError, PolynomialSyntaxError) as exc:
        raise JobSchemaError(f"ring: {exc}") from exc
    except ValueError as exc:
        raise JobSchemaError(f"ring: {exc}") from exc


def parse_document(
    data: Any,
    source: str = "<memória>",
    config: Optional[EngineConfig] = None,
    characteristic: Optional[int] = None,
    order: Optional[str] = None,
) -> JobDocument:
    """
    Valida um documento de tarefa já decodificado.

    Args:
        data: Objeto JSON decodificado
        source: Caminho de origem (ecoado no relatório)
        config: Configuração do motor
        characteristic: Sobrescreve a característica do bloco ring (--char)
        order: Sobrescreve a ordem monomial do bloco ring (--order)

    Returns:
        JobDocument validado

    Raises:
        JobSchemaError: Documento fora do esquema
    """
    config = config or get_config()
    if not isinstance(data, Mapping):
        raise JobSchemaError("O documento deve ser um objeto JSON")
    task = _require(data, "task", str, "documento")
    if task not in TASKS:
        raise JobSchemaError(f"Tarefa desconhecida: {task!r}")
    spec = TASKS[task]
    _check_fields(data, COMMON_FIELDS | spec.fields, f"tarefa {task}")

    tag = data.get("tag", "")
    if not isinstance(tag, str):
        raise JobSchemaError("'tag' deve ser texto")
    expect = data.get("expect")
    if expect is not None:
        _check_fields(expect, EXPECT_FIELDS, "expect")
        if not isinstance(expect.get("verdict", ""), str):
            raise JobSchemaError("expect: 'verdict' deve ser texto")
        if not isinstance(expect.get("details", {}), Mapping):
            raise JobSchemaError("expect: 'details' deve ser um objeto")

    ring = None
    if spec.needs_ring:
        ring = _parse_ring(
            _require(data, "ring", Mapping, "documento"), config, characteristic, order
        )
    payload = {k: v for k, v in data.items() if k in spec.fields}
    for key in spec.required:
        if key not in payload:
            raise JobSchemaError(f"tarefa {task}: campo obrigatório ausente: {key!r}")
    return JobDocument(task, payload, ring, tag, source, expect)


def load_document(
    path: str,
    config: Optional[EngineConfig] = None,
    characteristic: Optional[int] = None,
    order: Optional[str] = None,
) -> JobDocument:
    """
    Lê e valida um documento de tarefa em disco.

    Raises:
        JobSchemaError: Arquivo ilegível, JSON inválido ou fora do esquema
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise JobSchemaError(f"Não foi possível ler {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise JobSchemaError(f"JSON inválido em {path}: {exc}") from exc
    return parse_document(data, path, config, characteristic, order)


# ----------------------------------------------------------------------
# Blocos de payload
# ----------------------------------------------------------------------


def _polys(ring: RingPresentation, values: Sequence) -> List[PolyElement]:
    return [ring.coerce(v) for v in values]


def _forcing_from(doc: JobDocument) -> ForcingSystem:
    block = doc.payload["forcing"]
    _check_fields(block, FORCING_FIELDS, "forcing")
    t_names = block.get("t_names")
    if "matrix" in block or "vector" in block:
        if "generators" in block or "f" in block:
            raise JobSchemaError("forcing: use matrix/vector ou generators/f, não ambos")
        matrix = _require(block, "matrix", list, "forcing")
        if not all(isinstance(row, list) for row in matrix):
            raise JobSchemaError("forcing: 'matrix' deve ser uma lista de linhas")
        vector = _string_list(block, "vector", "forcing")
        return ForcingSystem(
            doc.ring, [[str(a) for a in row] for row in matrix], vector, t_names
        )
    generators = _string_list(block, "generators", "forcing")
    target = block.get("f", "0")
    if not isinstance(target, (str, int)):
        raise JobSchemaError("forcing: 'f' deve ser um polinômio")
    return ForcingSystem.from_ideal(doc.ring, generators, str(target), t_names)


def _cocycle_from(doc: JobDocument) -> CechCocycle:
    block = doc.payload["cocycle"]
    _check_fields(block, COCYCLE_FIELDS, "cocycle")
    generators = _string_list(block, "generators", "cocycle")
    exponent = block.get("m", 1)
    if not isinstance(exponent, int) or isinstance(exponent, bool):
        raise JobSchemaError("cocycle: 'm' deve ser inteiro")
    raw = _require(block, "numerators", Mapping, "cocycle")
    numerators = {}
    for key, value in raw.items():
        try:
            i, j = (int(part) for part in str(key).split(","))
        except ValueError:
            raise JobSchemaError(f"cocycle: chave de par inválida {key!r} (use 'i,j')")
        numerators[(i, j)] = str(value)
    return CechCocycle(doc.ring, generators, exponent, numerators)


def _points_from(
    doc: JobDocument, presentation: RingPresentation, short: Optional[int] = None
) -> List[PointAssignment]:
    """Pontos do documento; `short` admite também pontos com só essa quantidade de coordenadas."""
    if "points" in doc.payload:
        raw = doc.payload["points"]
    elif "point" in doc.payload:
        raw = [doc.payload["point"]]
    else:
        return []
    if not isinstance(raw, list) or not all(isinstance(p, list) for p in raw):
        raise JobSchemaError("'point'/'points' devem ser listas de coordenadas")
    points = []
    for values in raw:
        if len(values) != presentation.ngens and len(values) != short:
            raise JobSchemaError(
                f"Ponto {values} precisa de {presentation.ngens} coordenadas"
            )
        try:
            points.append(PointAssignment.from_values(presentation.field, values))
        except CoefficientError as exc:
            raise JobSchemaError(f"Coordenada inválida: {exc}") from exc
    return points


def _ideal_from(doc: JobDocument, limits: EngineLimits) -> IdealHandle:
    return IdealHandle(doc.ring, _string_list(doc.payload, "ideal", "ideal"), limits)


def _limits(config: EngineConfig) -> EngineLimits:
    return EngineLimits.from_config(config)


def _witness_check(condition: bool, message: str) -> None:
    if not condition:
        logger.error(f"Testemunha rejeitada: {message}")
        raise WitnessMismatchError(message)


def _strings(polys: Sequence[PolyElement]) -> List[str]:
    return [format_polynomial(p) for p in polys]


# ----------------------------------------------------------------------
# Tarefas
# ----------------------------------------------------------------------


def _task_gb(doc: JobDocument, config: EngineConfig, report: Report) -> None:
    ideal = _ideal_from(doc, _limits(config))
    names = _string_list(doc.payload, "eliminate", "gb", required=False)
    if names:
        ideal = eliminate(ideal, names)
        report.details["remaining_variables"] = list(ideal.presentation.variables)
    basis = groebner(ideal)
    report.details["basis"] = _strings(basis)
    if not basis:
        report.verdict = "zero"
    elif is_unit_ideal(ideal):
        report.verdict = "unit"
    else:
        report.verdict = "proper"


def _task_member(doc: JobDocument, config: EngineConfig, report: Report) -> None:
    ideal = _ideal_from(doc, _limits(config))
    element = doc.ring.coerce(doc.payload["element"])
    result = ideal_member(element, ideal)
    report.verdict = _verdict(result.member)
    report.details["remainder"] = format_polynomial(result.remainder)
    if result.member:
        _witness_check(result.verify(element, ideal), "combinação de pertinência")
        coefficients = result.reduced_coefficients(ideal)
        combined = doc.ring.ring.zero
        for a, g in zip(coefficients, ideal.generators):
            combined += a * g
        _witness_check(
            not normal_form(element - combined, IdealHandle(doc.ring, (), ideal.limits)),
            "cofatores reduzidos módulo as relações",
        )
        report.witnesses["coefficients"] = _strings(coefficients)


def _task_radical(doc: JobDocument, config: EngineConfig, report: Report) -> None:
    ideal = _ideal_from(doc, _limits(config))
    report.verdict = _verdict(radical_member(doc.payload["element"], ideal))


def _task_fiber(doc: JobDocument, config: EngineConfig, report: Report) -> None:
    system = _forcing_from(doc)
    points = _points_from(doc, doc.ring)
    if not points:
        raise JobSchemaError("fiber: campo obrigatório ausente: 'point'")
    fibers = [fiber_at(system, point) for point in points]
    report.details["fibers"] = [
        dict(point=point.describe(), **fiber.to_document(doc.ring.field))
        for point, fiber in zip(points, fibers)
    ]
    report.details["dimensions"] = [fiber.dimension for fiber in fibers]
    tags = {fiber.tag for fiber in fibers}
    report.verdict = tags.pop() if len(tags) == 1 else "mixed"


def _task_section(doc: JobDocument, config: EngineConfig, report: Report) -> None:
    limits = _limits(config)
    system = _forcing_from(doc)
    section = has_section(system, limits)
    report.verdict = _verdict(section.exists)
    if section.exists:
        for row, target in zip(system.matrix, system.vector):
            image = sum((a * t for a, t in zip(row, section.witness)), doc.ring.ring.zero)
            _witness_check(doc.ring.is_zero(image - target), "seção A t = s")
        report.witnesses["section"] = _strings(
            [doc.ring.reduce(t) for t in section.witness]
        )
    if system.is_ideal_case:
        report.details["surjective"] = is_surjective_over_base(system, limits)


def _task_cocycle_check(doc: JobDocument, config: EngineConfig, report: Report) -> None:
    check = check_cocycle(_cocycle_from(doc))
    report.verdict = _verdict(check.holds)
    if not check.holds:
        report.details["failing_triple"] = list(check.failing_triple)
        report.details["residue"] = format_polynomial(check.residue)


def _task_cech_to_forcing(doc: JobDocument, config: EngineConfig, report: Report) -> None:
    limits = _limits(config)
    system = cech_to_forcing(_cocycle_from(doc))
    algebra = system.algebra
    forcing = system.to_document()
    report.details["matrix"] = forcing["matrix"]
    report.details["vector"] = forcing["vector"]
    report.details["t_names"] = forcing["t_names"]
    checks: List[bool] = []

    adjoin = _string_list(doc.payload, "adjoin", "cech-to-forcing", required=False)
    if adjoin:
        unit = is_unit_ideal(IdealHandle(algebra, _polys(algebra, adjoin), limits))
        report.details["adjoined_unit"] = unit
        checks.append(unit)

    members = _string_list(doc.payload, "vanishing", "cech-to-forcing", required=False)
    if members:
        ideal = system.forcing_ideal(limits)
        results = []
        for text in members:
            remainder = normal_form(algebra.coerce(text), ideal)
            results.append(format_polynomial(remainder))
            checks.append(not remainder)
        report.details["vanishing_remainders"] = results

    mapping = doc.payload.get("parametrization")
    if mapping is not None:
        if not isinstance(mapping, Mapping):
            raise JobSchemaError("cech-to-forcing: 'parametrization' deve ser um objeto")
        images = {name: algebra.coerce(str(value)) for name, value in mapping.items()}
        for name in images:
            algebra.index(name)
        relations = [algebra.coerce(r) for r in system.base.relations]
        relations.extend(system.forcing_relations)
        residues = [format_polynomial(substitute(r, images)) for r in relations]
        report.details["parametrization_residues"] = residues
        checks.append(all(r == "0" for r in residues))

    names = _string_list(doc.payload, "eliminate", "cech-to-forcing", required=False)
    if names:
        eliminated = eliminate(system.forcing_ideal(limits), names)
        basis = groebner(eliminated)
        report.details["eliminated_basis"] = _strings(basis)
        report.details["remaining_variables"] = list(eliminated.presentation.variables)
        checks.append(not basis)

    report.verdict = _verdict(all(checks))


def _task_coboundary(doc: JobDocument, config: EngineConfig, report: Report) -> None:
    c = _cocycle_from(doc)
    factor = doc.payload.get("scale")
    if factor is not None:
        if not isinstance(factor, (str, int)) or isinstance(factor, bool):
            raise JobSchemaError("coboundary: 'scale' deve ser um polinômio")
        c = c.scaled(factor)
        report.details["scale"] = format_polynomial(c.base.coerce(factor))
    extra = _string_list(doc.payload, "restrict", "coboundary", required=False)
    if extra:
        c = restrict_class(c, extra)
        report.details["restricted_ring"] = c.base.describe()
    try:
        result = is_coboundary(c, _limits(config))
    except ArithmeticError as exc:
        raise WitnessMismatchError(str(exc)) from exc
    report.verdict = _verdict(result.is_coboundary)
    if result.is_coboundary:
        for i, j in c.pairs:
            image = c.power(j) * result.witness[i - 1] - c.power(i) * result.witness[j - 1]
            _witness_check(c.base.is_zero(image - c.b(i, j)), f"cobordo no par ({i}, {j})")
        report.witnesses["t"] = _strings([c.base.reduce(t) for t in result.witness])


def _task_localize(doc: JobDocument, config: EngineConfig, report: Report) -> None:
    limits = _limits(config)
    system = cech_to_forcing(_cocycle_from(doc))
    index = doc.payload["index"]
    if not isinstance(index, int) or isinstance(index, bool):
        raise JobSchemaError("localize: 'index' deve ser inteiro")
    localization = localize_presentation(system, index, limits)
    report.details["inverse_variable"] = localization.inverse_variable
    report.witnesses["substitutions"] = dict(sorted(localization.substitutions.items()))
    verdict = localization.is_polynomial_ring

    pair = doc.payload.get("transition")
    if pair is not None:
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(k, int) for k in pair)):
            raise JobSchemaError("localize: 'transition' deve ser um par [i, j]")
        transition = transition_check(system, pair[0], pair[1], limits)
        report.details["transition"] = transition
        verdict = verdict and transition
    report.verdict = _verdict(verdict)


def _task_jacobian(doc: JobDocument, config: EngineConfig, report: Report) -> None:
    matrix = jacobian(_forcing_from(doc))
    rows, cols = matrix.shape
    report.verdict = f"{rows}x{cols}"
    report.details["matrix"] = matrix.describe()


def _task_classify(doc: JobDocument, config: EngineConfig, report: Report) -> None:
    limits = _limits(config)
    system = _forcing_from(doc)
    points = _points_from(doc, system.algebra, short=system.base.ngens)
    if not points:
        raise JobSchemaError("classify: campo obrigatório ausente: 'point'")
    dim_b = doc.payload.get("dim_b")
    dim_r = doc.payload.get("dim_r")
    for value in (dim_b, dim_r):
        if value is not None and (not isinstance(value, int) or isinstance(value, bool)):
            raise JobSchemaError("classify: dim_b e dim_r devem ser inteiros")
    if dim_r is None:
        dim_r = base_dimension(system, limits)

    entries, verdicts = [], set()
    width = system.base.ngens
    for point in points:
        classification = classify_point(system, point, dim_b, dim_r, limits)
        entry = dict(point=point.describe(), **classification.to_document())
        entry.pop("notes")
        if classification.case == CASE4_SINGULAR:
            base_point = PointAssignment(point.field, point.values[:width])
            linear = case4_system(system, base_point)
            entry["case4_solvable"] = linear.solution is not None
            report.details["case4_note"] = linear.note
        entries.append(entry)
        verdicts.add(classification.verdict)
    report.details["classifications"] = entries
    report.details["cases"] = sorted({entry["case"] for entry in entries})
    report.warnings.append(FIELD_CAVEAT)
    report.verdict = verdicts.pop() if len(verdicts) == 1 else "mixed"


def _task_locus(doc: JobDocument, config: EngineConfig, report: Report) -> None:
    limits = _limits(config)
    system = _forcing_from(doc)
    codim = doc.payload.get("codim")
    locus = singular_locus_ideal(system, codim, limits)
    report.details["minors"] = len(locus.generators)
    unit = is_unit_ideal(locus)
    report.verdict = "empty" if unit else "nonempty"
    points = _points_from(doc, system.algebra)
    if points:
        report.details["points"] = [
            {"point": point.describe(), "in_locus": point_in_locus(locus, point)}
            for point in points
        ]
    report.warnings.append(FIELD_CAVEAT)


def _task_frobenius(doc: JobDocument, config: EngineConfig, report: Report) -> None:
    ideal = _ideal_from(doc, _limits(config))
    e_max = doc.payload.get("e_max", config.e_max)
    lift = doc.payload.get("lift", True)
    if not isinstance(e_max, int) or not isinstance(lift, bool):
        raise JobSchemaError("frobenius: 'e_max' inteiro e 'lift' booleano")
    element = doc.ring.coerce(doc.payload["element"])
    frobenius = frobenius_member(element, ideal, e_max, lift)

    levels = []
    for level in frobenius.levels:
        entry = {"q": level.q, "member": level.member, "method": level.method}
        if level.member:
            _witness_check(verify_level(element, ideal, level), f"f^q ∈ I^[q] em q = {level.q}")
            reduced = [doc.ring.reduce(a) for a in level.coefficients]
            report.witnesses[f"q={level.q}"] = _strings(reduced)
        if level.error:
            entry["error"] = level.error
            report.warnings.append(f"Nível q = {level.q} abortado por limite de recursos")
        levels.append(entry)
    report.details["levels"] = levels
    report.details["first_inclusion"] = frobenius.first_inclusion
    report.details["monotone"] = frobenius.is_monotone
    report.details["summary"] = frobenius.summary()
    report.verdict = "found" if frobenius.first_inclusion is not None else "not-found"


def _task_degree(doc: JobDocument, config: EngineConfig, report: Report) -> None:
    weights = _require(doc.payload, "grading", Mapping, "degree")
    if "forcing" in doc.payload or "cocycle" in doc.payload:
        if "cocycle" in doc.payload:
            system = cech_to_forcing(_cocycle_from(doc))
        else:
            system = _forcing_from(doc)
        grading = _grading(system.algebra, weights)
        degrees = [_format_degree(d) for d in equation_degrees(system, grading)]
        report.details["equation_degrees"] = degrees
        if system.base.relations:
            report.details["relation_degrees"] = [
                _format_degree(d) for d in relation_degrees(system, grading)
            ]
        report.verdict = "; ".join(degrees)
        return

    grading = _grading(doc.ring, weights)
    f = doc.ring.coerce(_require(doc.payload, "element", (str, int), "degree"))
    generators = _polys(doc.ring, _string_list(doc.payload, "generators", "degree"))
    if len(generators) != 2:
        raise JobSchemaError("degree: a classe exige exatamente dois geradores")
    f1, f2 = generators
    degree = class_degree(f, f1, f2, grading)
    report.verdict = _format_degree(degree)
    e_max = doc.payload.get("e_max")
    p = doc.ring.field.characteristic
    if e_max is not None:
        if not p:
            report.warnings.append("Crescimento por Frobenius exige característica p > 0")
        else:
            report.details["frobenius_degrees"] = [
                {"q": q, "degree": _format_degree(d)}
                for q, d in degree_growth(f, f1, f2, grading, p, e_max)
            ]


def _grading(presentation: RingPresentation, weights: Mapping) -> Grading:
    normalized = {
        name: tuple(value) if isinstance(value, list) else value
        for name, value in weights.items()
    }
    return Grading.from_mapping(presentation, normalized)


def _task_derivation(doc: JobDocument, config: EngineConfig, report: Report) -> None:
    limits = _limits(config)
    system = _forcing_from(doc)
    derivation = build_lnd(system, limits)
    report.warnings.extend(derivation.warnings)
    report.details["images"] = {
        name: format_polynomial(image)
        for name, image in zip(system.t_names, derivation.images)
    }
    coaction = verify_coaction(system, limits)
    report.details["coaction"] = coaction

    elements = _string_list(doc.payload, "elements", "derivation", required=False)
    if elements:
        report.details["nilpotency"] = {
            text: nilpotency_index(derivation, system.algebra.coerce(text), limits)
            for text in elements
        }
    samples = _string_list(doc.payload, "kernel", "derivation", required=False)
    if samples:
        report.details["kernel"] = [
            {
                "element": sample.element,
                "derivative_vanishes": sample.derivative_vanishes,
                "congruent_to_base": sample.congruent_to_base,
            }
            for sample in check_kernel_sample(
                derivation, [system.algebra.coerce(s) for s in samples], limits
            )
        ]
    report.verdict = _verdict(coaction)


@dataclass(frozen=True)
class TaskSpec:
    handler: Callable[[JobDocument, EngineConfig, Report], None]
    fields: frozenset
    required: frozenset = frozenset()
    needs_ring: bool = True


def _spec(handler, required=(), optional=(), needs_ring=True) -> TaskSpec:
    return TaskSpec(
        handler, frozenset(required) | frozenset(optional), frozenset(required), needs_ring
    )


TASKS: Dict[str, TaskSpec] = {
    "gb": _spec(_task_gb, ["ideal"], ["eliminate"]),
    "member": _spec(_task_member, ["ideal", "element"]),
    "radical": _spec(_task_radical, ["ideal", "element"]),
    "fiber": _spec(_task_fiber, ["forcing"], ["point", "points"]),
    "section": _spec(_task_section, ["forcing"]),
    "cocycle-check": _spec(_task_cocycle_check, ["cocycle"]),
    "cech-to-forcing": _spec(
        _task_cech_to_forcing,
        ["cocycle"],
        ["adjoin", "vanishing", "parametrization", "eliminate"],
    ),
    "coboundary": _spec(_task_coboundary, ["cocycle"], ["scale", "restrict"]),
    "localize": _spec(_task_localize, ["cocycle", "index"], ["transition"]),
    "jacobian": _spec(_task_jacobian, ["forcing"]),
    "classify": _spec(_task_classify, ["forcing"], ["point", "points", "dim_b", "dim_r"]),
    "locus": _spec(_task_locus, ["forcing"], ["codim", "point", "points"]),
    "frobenius": _spec(_task_frobenius, ["ideal", "element"], ["e_max", "lift"]),
    "degree": _spec(
        _task_degree,
        ["grading"],
        ["element", "generators", "forcing", "cocycle", "e_max"],
    ),
    "derivation": _spec(_task_derivation, ["forcing"], ["elements", "kernel"]),
}

# Erros de dados (matemáticos ou de entrada) tratados como erro de esquema
DATA_ERRORS = (
    PolynomialSyntaxError,
    CoefficientError,
    RingMismatchError,
    GradingError,
    ForcingError,
    CocycleError,
    SingularityError,
    FrobeniusError,
    UnitIdealError,
    KeyError,
    IndexError,
)


def engine_summary(config: EngineConfig) -> dict:
    return {
        "order": config.order,
        "max_pairs": config.max_pairs,
        "max_basis": config.max_basis,
        "max_degree": config.max_degree,
        "e_max": config.e_max,
    }


def run_job(doc: JobDocument, config: Optional[EngineConfig] = None) -> Report:
    """
    Executa a tarefa do documento.

    Args:
        doc: Documento validado
        config: Configuração do motor (limites, e_max)

    Returns:
        Report com veredito, testemunhas reverificadas e avisos

    Raises:
        JobSchemaError: Dados inconsistentes com a tarefa
        ComputationAborted: Limite de recursos atingido
        WitnessMismatchError: Testemunha não se reverificou
    """
    config = config or get_config()
    engine = engine_summary(config)
    if doc.ring is not None:
        engine["order"] = doc.ring.order
    report = Report(
        task=doc.task,
        document=doc.name,
        tag=doc.tag,
        verdict="",
        engine=engine,
        ring=doc.ring.describe() if doc.ring is not None else None,
    )
    started = time.perf_counter()
    logger.info(f"Executando {doc.task} ({doc.name})")
    try:
        TASKS[doc.task].handler(doc, config, report)
    except DATA_ERRORS as exc:
        raise JobSchemaError(f"{type(exc).__name__}: {exc}") from exc
    report.duration_ms = (time.perf_counter() - started) * 1000
    logger.info(f"{doc.task} ({doc.name}): veredito {report.verdict}")

    if doc.expect is not None:
        report.problems = check_expectation(report, doc.expect)
        report.passed = not report.problems
    return report


def _normalized(value: Any) -> Any:
    return json.loads(json.dumps(value, sort_keys=True))


def check_expectation(report: Report, expect: Mapping[str, Any]) -> List[str]:
    """
    Compara o relatório com o bloco expect (veredito e detalhes selecionados).

    Returns:
        Lista de divergências (vazia quando a entrada passa)
    """
    problems = []
    if "verdict" in expect and expect["verdict"] != report.verdict:
        problems.append(f"veredito {report.verdict!r}, esperado {expect['verdict']!r}")
    for key, expected in expect.get("details", {}).items():
        if key not in report.details:
            problems.append(f"detalhe {key!r} ausente")
        elif _normalized(report.details[key]) != _normalized(expected):
            problems.append(
                f"detalhe {key!r} = {report.details[key]!r}, esperado {expected!r}"
            )
    return problems
