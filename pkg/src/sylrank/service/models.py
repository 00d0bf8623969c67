"""Request models for the service endpoints (and the CLI, which reuses them)."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict


class _Request(BaseModel):
    model_config = ConfigDict(extra="forbid")


class RankRequest(_Request):
    ring: str
    fn: str
    matrix: str | None = None
    matrix_file: str | None = None


class DimRequest(_Request):
    ring: str
    fn: str
    module: str | None = None
    module_file: str | None = None


class BidimRequest(_Request):
    ring: str
    fn: str
    module: str | None = None
    module_file: str | None = None
    sub: str | None = None
    sub_file: str | None = None


class MapRankRequest(_Request):
    ring: str
    fn: str
    domain: str
    codomain: str
    map: str


class CheckAxiomsRequest(_Request):
    facet: str
    fn: str
    ring: str | None = None
    samples: int = 500
    seed: int = 0


class CheckPropertiesRequest(_Request):
    ring: str
    fn: str
    properties: str = "additivity,submodularity,hom_monotone,stability,composition,triangular,monotone"
    samples: int = 200
    seed: int = 0


class CheckLengthRequest(_Request):
    ring: str
    fn: str
    samples: int = 200
    seed: int = 0


class PullbackRequest(_Request):
    ring: str
    hom: str
    fn: str
    matrix: str | None = None
    matrix_file: str | None = None


class PushforwardRequest(_Request):
    epi: str
    fn: str
    matrix: str | None = None
    matrix_file: str | None = None


class EpiRangeRequest(_Request):
    epi: str
    fn: str


class LimitDimRequest(_Request):
    system: str
    fn: str
    stable_window: int = 3


class OreTestRequest(_Request):
    fn: str
    m: int
    horizon: int = 8


class SoficDimRequest(_Request):
    field: str
    group: str
    module: str | None = None
    module_file: str | None = None
    sub: str | None = None
    sub_file: str | None = None


class SoficVsVnRequest(_Request):
    field: str
    group: str
    samples: int = 100
    seed: int = 0
