"""Verb implementations shared by the HTTP service and the CLI.

Each handler takes a validated request model and returns a plain payload
dict plus a flag for "a verification ran and found violations".  All numeric
output is exact fraction text; payloads serialize byte-deterministically via
the canonical encoder.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bivariant import (
    PROPERTY_NAMES,
    bidim,
    check_bivariant_properties,
    ext_map_rank,
)
from ..checks import check_axioms, check_length_criterion
from ..errors import ParseError
from ..fpmod import FPMap, FPModule, Submodule, parse_module_file, parse_module_inline
from ..matrices import parse_matrix
from ..ranks import module_dim, parse_rank_fn, rk_pullback
from ..report import SCHEMA
from ..rings import Ring, Z, make_hom, ring_make
from ..sampler import RandomSampler
from ..sofic import SoficApproximation, is_modular_case, sofic_bidim, sofic_vs_vn
from ..transport import (
    constant_power_system,
    epi_range_test,
    limit_relative_dim,
    ore_localization_test,
    parse_epi,
    pushforward,
)
from ..values import fmt_value
from . import models


@dataclass
class HandlerOutcome:
    payload: dict
    failed: bool = False


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path!r}: {exc}") from exc


def _pick(inline: str | None, path: str | None, what: str) -> tuple[str, bool]:
    if inline is not None and path is not None:
        raise ParseError(f"give exactly one of inline {what} and {what} file, not both")
    if inline is not None:
        return inline, False
    if path is not None:
        return _read_file(path), True
    raise ParseError(f"missing {what}")


def _load_matrix(ring: Ring, inline: str | None, path: str | None, what: str = "matrix"):
    text, _ = _pick(inline, path, what)
    return parse_matrix(ring, text)


def _load_module(ring: Ring, inline: str | None, path: str | None):
    text, from_file = _pick(inline, path, "module")
    if from_file:
        module, subs = parse_module_file(text)
        if module.ring != ring:
            raise ParseError(f"module file is over {module.ring}, expected {ring}")
        return module, subs
    return parse_module_inline(ring, text), []


def _load_sub(module: FPModule, file_subs, inline: str | None, path: str | None) -> Submodule:
    if inline is None and path is None:
        if file_subs:
            return file_subs[0]
        raise ParseError("missing submodule generator rows")
    text, _ = _pick(inline, path, "submodule")
    rows = parse_matrix(module.ring, text, ncols=module.gens)
    return Submodule(module, rows)


def handle_rank(req: models.RankRequest) -> HandlerOutcome:
    ring = ring_make(req.ring)
    fn = parse_rank_fn(req.fn, ring)
    mat = _load_matrix(ring, req.matrix, req.matrix_file)
    return HandlerOutcome({"schema": SCHEMA, "value": fmt_value(fn(mat))})


def handle_dim(req: models.DimRequest) -> HandlerOutcome:
    ring = ring_make(req.ring)
    fn = parse_rank_fn(req.fn, ring)
    module, _ = _load_module(ring, req.module, req.module_file)
    return HandlerOutcome({"schema": SCHEMA, "value": fmt_value(module_dim(fn, module))})


def handle_bidim(req: models.BidimRequest) -> HandlerOutcome:
    ring = ring_make(req.ring)
    fn = parse_rank_fn(req.fn, ring)
    module, file_subs = _load_module(ring, req.module, req.module_file)
    sub = _load_sub(module, file_subs, req.sub, req.sub_file)
    result = bidim(fn, sub)
    return HandlerOutcome({
        "schema": SCHEMA,
        "value": fmt_value(result.value),
        "rank_stack": fmt_value(result.rank_stack),
        "rank_relations": fmt_value(result.rank_relations),
    })


def handle_maprank(req: models.MapRankRequest) -> HandlerOutcome:
    ring = ring_make(req.ring)
    fn = parse_rank_fn(req.fn, ring)
    domain = parse_module_inline(ring, req.domain)
    codomain = parse_module_inline(ring, req.codomain)
    mat = parse_matrix(ring, req.map)
    if mat.shape != (domain.gens, codomain.gens):
        raise ParseError(
            f"map matrix is {mat.nrows}x{mat.ncols}, expected {domain.gens}x{codomain.gens}"
        )
    alpha = FPMap(domain, codomain, mat)
    return HandlerOutcome({"schema": SCHEMA, "value": fmt_value(ext_map_rank(fn, alpha))})


def handle_check_axioms(req: models.CheckAxiomsRequest) -> HandlerOutcome:
    ring = ring_make(req.ring) if req.ring is not None else None
    fn = parse_rank_fn(req.fn, ring)
    report = check_axioms(req.facet, fn, RandomSampler(req.seed), req.samples)
    return HandlerOutcome(report.to_doc(), failed=not report.passed)


def handle_check_properties(req: models.CheckPropertiesRequest) -> HandlerOutcome:
    ring = ring_make(req.ring)
    fn = parse_rank_fn(req.fn, ring)
    names = [p.strip() for p in req.properties.split(",") if p.strip()]
    for name in names:
        if name not in PROPERTY_NAMES:
            raise ParseError(f"unknown property {name!r}; expected subset of {PROPERTY_NAMES}")
    report = check_bivariant_properties(fn, RandomSampler(req.seed), names, req.samples)
    return HandlerOutcome(report.to_doc(), failed=not report.passed)


def handle_check_length(req: models.CheckLengthRequest) -> HandlerOutcome:
    ring = ring_make(req.ring)
    fn = parse_rank_fn(req.fn, ring)
    report = check_length_criterion(fn, RandomSampler(req.seed), req.samples)
    return HandlerOutcome(report.to_doc(), failed=not report.passed)


def handle_pullback(req: models.PullbackRequest) -> HandlerOutcome:
    source = ring_make(req.ring)
    inner = parse_rank_fn(req.fn)
    hom = make_hom(req.hom, source)
    fn = rk_pullback(hom, inner)
    mat = _load_matrix(source, req.matrix, req.matrix_file)
    return HandlerOutcome({"schema": SCHEMA, "value": fmt_value(fn(mat))})


def handle_pushforward(req: models.PushforwardRequest) -> HandlerOutcome:
    struct = parse_epi(req.epi)
    fn = parse_rank_fn(req.fn, struct.hom.source)
    pushed = pushforward(fn, struct)
    mat = _load_matrix(struct.hom.target, req.matrix, req.matrix_file)
    return HandlerOutcome({"schema": SCHEMA, "value": fmt_value(pushed(mat))})


def handle_epi_range(req: models.EpiRangeRequest) -> HandlerOutcome:
    struct = parse_epi(req.epi)
    fn = parse_rank_fn(req.fn, struct.hom.source)
    result = epi_range_test(fn, struct)
    return HandlerOutcome({
        "schema": SCHEMA,
        "in_image": result.in_image,
        "rk_pi": fmt_value(result.rk_pi),
        "rk_id_s": fmt_value(result.rk_id_s),
    })


def _parse_system(text: str):
    parts = text.split(";")
    if len(parts) < 3:
        raise ParseError(f"bad system spec {text!r}; expected <ring>;mul:<matrix>;T=<n>")
    ring = ring_make(parts[0])
    tail = parts[-1].strip()
    if not tail.startswith("T="):
        raise ParseError(f"bad system spec {text!r}; last field must be T=<n>")
    try:
        horizon = int(tail[2:])
    except ValueError as exc:
        raise ParseError(f"bad horizon in {text!r}") from exc
    middle = ";".join(parts[1:-1]).strip()
    if not middle.startswith("mul:"):
        raise ParseError(f"bad system spec {text!r}; transition must be mul:<matrix>")
    step = parse_matrix(ring, middle[len("mul:"):])
    return ring, step, horizon


def handle_limit_dim(req: models.LimitDimRequest) -> HandlerOutcome:
    ring, step, horizon = _parse_system(req.system)
    fn = parse_rank_fn(req.fn, ring)
    system = constant_power_system(ring, step, horizon)
    result = limit_relative_dim(fn, system, req.stable_window)
    return HandlerOutcome({
        "schema": SCHEMA,
        "values": [fmt_value(v) for v in result.values],
        "inf": fmt_value(result.inf_observed),
        "stabilized": result.stabilized,
    })


def handle_ore_test(req: models.OreTestRequest) -> HandlerOutcome:
    fn = parse_rank_fn(req.fn, Z)
    result = ore_localization_test(fn, req.m, req.horizon)
    return HandlerOutcome({
        "schema": SCHEMA,
        "status": result.status,
        "in_image": result.in_image,
        "rk_pi": fmt_value(result.rk_pi),
        "values": [fmt_value(v) for v in result.values],
    })


def _sofic_ring(req) -> tuple:
    ring = ring_make(f"GroupRing({req.field},{req.group})")
    return ring, ring.base, ring.group


def handle_sofic_dim(req: models.SoficDimRequest) -> HandlerOutcome:
    ring, base, group = _sofic_ring(req)
    module, file_subs = _load_module(ring, req.module, req.module_file)
    sub = _load_sub(module, file_subs, req.sub, req.sub_file)
    approx = SoficApproximation.regular(group)
    value = sofic_bidim(approx, sub)
    return HandlerOutcome({
        "schema": SCHEMA,
        "value": fmt_value(value),
        "modular": is_modular_case(base, group),
    })


def handle_sofic_vs_vn(req: models.SoficVsVnRequest) -> HandlerOutcome:
    _, base, group = _sofic_ring(req)
    report = sofic_vs_vn(base, group, RandomSampler(req.seed), req.samples)
    return HandlerOutcome(report.to_doc(), failed=not report.passed)


VERBS = {
    "rank": (models.RankRequest, handle_rank),
    "dim": (models.DimRequest, handle_dim),
    "bidim": (models.BidimRequest, handle_bidim),
    "maprank": (models.MapRankRequest, handle_maprank),
    "check-axioms": (models.CheckAxiomsRequest, handle_check_axioms),
    "check-properties": (models.CheckPropertiesRequest, handle_check_properties),
    "check-length": (models.CheckLengthRequest, handle_check_length),
    "pullback": (models.PullbackRequest, handle_pullback),
    "pushforward": (models.PushforwardRequest, handle_pushforward),
    "epi-range": (models.EpiRangeRequest, handle_epi_range),
    "limit-dim": (models.LimitDimRequest, handle_limit_dim),
    "ore-test": (models.OreTestRequest, handle_ore_test),
    "sofic-dim": (models.SoficDimRequest, handle_sofic_dim),
    "sofic-vs-vn": (models.SoficVsVnRequest, handle_sofic_vs_vn),
}


def dispatch(verb: str, payload: dict) -> HandlerOutcome:
    if verb not in VERBS:
        raise ParseError(f"unknown verb {verb!r}")
    model_cls, handler = VERBS[verb]
    return handler(model_cls(**payload))
