"""Pydantic models for family parameters, invariants and reports.

Rationals are sympy ``Rational`` values; fields accept ints, ``p/q`` text and
sympy numbers and coerce them on validation.
"""

from enum import StrEnum
from typing import Annotated, Any

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, model_validator
from sympy import Rational

from leibniz_nf.core.exactlin import ZERO, Matrix, format_rational, to_rational

RationalValue = Annotated[Rational, BeforeValidator(to_rational)]

_FROZEN = ConfigDict(frozen=True, arbitrary_types_allowed=True)


def _tuple_text(values: tuple[Rational, ...]) -> str:
    return "(" + ", ".join(format_rational(v) for v in values) + ")"


def _list_text(values: tuple[Any, ...]) -> str:
    return "[" + ", ".join(str(v) for v in values) + "]"


class BetaParams(BaseModel):
    """Parameters of one beta-type block: ``(beta_2, ..., beta_s, gamma)``.

    ``[f_i, x] = sum_{j > i} beta_{j-i+1} f_j`` and ``[x, x]`` gets
    ``gamma f_s``.
    """

    model_config = _FROZEN

    s: int = Field(ge=1, description="Dimension of the block")
    beta: tuple[RationalValue, ...] = Field(
        default=(), description="beta_2 .. beta_s, length s - 1"
    )
    gamma: RationalValue = Field(default=ZERO, description="Coefficient of [x, x] on f_s")

    @model_validator(mode="after")
    def check_length(self) -> "BetaParams":
        if len(self.beta) != self.s - 1:
            raise ValueError(
                f"expected {self.s - 1} beta values for s={self.s}, got {len(self.beta)}"
            )
        return self

    def beta_at(self, m: int) -> Rational:
        """``beta_m`` for ``2 <= m <= s``."""
        return self.beta[m - 2]

    @property
    def coefficients(self) -> tuple[Rational, ...]:
        return (*self.beta, self.gamma)

    @property
    def is_split(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def __str__(self) -> str:
        return f"(s={self.s}, beta={_tuple_text(self.beta)}, gamma={format_rational(self.gamma)})"


class GeneralParams(BaseModel):
    """Parameters of the general family with ``j'`` e-blocks and ``k'`` f-blocks.

    The basis is ordered e-blocks, then f-blocks, then ``x``. Structural
    problems (length mismatches, empty e-blocks) fail validation; the
    ``delta`` value rules are enforced by the constructor.
    """

    model_config = _FROZEN

    block_dims_e: tuple[int, ...] = Field(min_length=1, description="n_1 .. n_j'")
    deltas: tuple[RationalValue, ...] = Field(description="delta^1 .. delta^j'")
    f_blocks: tuple[BetaParams, ...] = Field(default=(), description="One entry per f-block")

    @model_validator(mode="after")
    def check_blocks(self) -> "GeneralParams":
        if len(self.deltas) != len(self.block_dims_e):
            raise ValueError(
                f"{len(self.deltas)} deltas for {len(self.block_dims_e)} e-blocks"
            )
        if any(n < 1 for n in self.block_dims_e):
            raise ValueError("e-block dimensions must be positive")
        return self

    @property
    def block_dims_f(self) -> tuple[int, ...]:
        return tuple(b.s for b in self.f_blocks)

    @property
    def betas(self) -> tuple[tuple[Rational, ...], ...]:
        return tuple(b.beta for b in self.f_blocks)

    @property
    def gammas(self) -> tuple[Rational, ...]:
        return tuple(b.gamma for b in self.f_blocks)

    @property
    def shape(self) -> tuple[int, int]:
        """``(j', k')``."""
        return len(self.block_dims_e), len(self.f_blocks)

    @property
    def dim(self) -> int:
        return sum(self.block_dims_e) + sum(self.block_dims_f) + 1


class Fingerprint(BaseModel):
    """Basis-free invariants used to separate families."""

    model_config = _FROZEN

    dim: int = Field(description="Dimension of the algebra")
    lcs_dims: tuple[int, ...] = Field(description="Lower central series dimensions")
    ds_dims: tuple[int, ...] = Field(description="Derived series dimensions")
    dim_square: int = Field(description="Dimension of [A, A]")
    dim_der: int = Field(description="Dimension of the derivation algebra")
    dim_ann_r: int = Field(description="Dimension of the right annihilator")
    nilpotent: bool
    solvable: bool

    def as_tuple(self) -> tuple[Any, ...]:
        return (
            self.dim,
            list(self.lcs_dims),
            list(self.ds_dims),
            self.dim_square,
            self.dim_der,
            self.dim_ann_r,
            self.nilpotent,
            self.solvable,
        )


class Family(StrEnum):
    NULL_FILIFORM = "NullFiliform"
    SOLVABLE_NF = "SolvableNF"
    R_ALPHA = "RAlpha"
    R_BETA = "RBeta"
    R_GENERAL = "RGeneral"
    UNKNOWN = "Unknown"


class ClassLabel(BaseModel):
    """A recognized family with canonical parameters.

    ``NullFiliform`` and ``SolvableNF`` carry ``n``; the two-block and general
    families carry ``params`` (``RAlpha`` as two e-blocks with deltas
    ``(1, alpha)``, ``RBeta`` as one e-block and one f-block). When present,
    ``witness`` maps the classified input onto the canonical table.
    """

    model_config = _FROZEN

    family: Family
    n: int | None = Field(default=None, description="Dimension of the null-filiform part")
    params: GeneralParams | None = Field(default=None, description="Block parameters")
    witness: Matrix | None = Field(
        default=None, description="Basis change onto the canonical table"
    )
    fingerprint: Fingerprint | None = Field(default=None, description="Invariants of the input")

    @classmethod
    def null_filiform(cls, n: int) -> "ClassLabel":
        return cls(family=Family.NULL_FILIFORM, n=n)

    @classmethod
    def solvable_nf(cls, n: int) -> "ClassLabel":
        return cls(family=Family.SOLVABLE_NF, n=n)

    @classmethod
    def r_alpha(cls, k: int, s: int, alpha: Any) -> "ClassLabel":
        params = GeneralParams(block_dims_e=(k, s), deltas=(1, alpha))
        return cls(family=Family.R_ALPHA, params=params)

    @classmethod
    def r_beta(cls, k: int, beta: BetaParams) -> "ClassLabel":
        params = GeneralParams(block_dims_e=(k,), deltas=(1,), f_blocks=(beta,))
        return cls(family=Family.R_BETA, params=params)

    @classmethod
    def r_general(cls, params: GeneralParams) -> "ClassLabel":
        return cls(family=Family.R_GENERAL, params=params)

    @classmethod
    def unknown(cls, fingerprint: Fingerprint | None = None) -> "ClassLabel":
        return cls(family=Family.UNKNOWN, fingerprint=fingerprint)

    @property
    def is_unknown(self) -> bool:
        return self.family is Family.UNKNOWN

    def key(self) -> tuple[Any, ...]:
        """Identity of the isomorphism class, ignoring witness and fingerprint."""
        return (self.family, self.n, self.params)

    def with_witness(self, witness: Matrix | None) -> "ClassLabel":
        return self.model_copy(update={"witness": witness})

    @property
    def k(self) -> int:
        assert self.params is not None
        return self.params.block_dims_e[0]

    @property
    def s(self) -> int:
        assert self.params is not None
        if self.family is Family.R_ALPHA:
            return self.params.block_dims_e[1]
        return self.params.f_blocks[0].s

    @property
    def alpha(self) -> Rational:
        assert self.params is not None
        return self.params.deltas[1]

    @property
    def beta_params(self) -> BetaParams:
        assert self.params is not None
        return self.params.f_blocks[0]

    def __str__(self) -> str:
        family = self.family.value
        if self.family in (Family.NULL_FILIFORM, Family.SOLVABLE_NF):
            return f"{family}(n={self.n})"
        if self.family is Family.R_ALPHA:
            return f"{family}(k={self.k}, s={self.s}, alpha={format_rational(self.alpha)})"
        if self.family is Family.R_BETA:
            b = self.beta_params
            return (
                f"{family}(k={self.k}, s={b.s}, beta={_tuple_text(b.beta)}, "
                f"gamma={format_rational(b.gamma)})"
            )
        if self.family is Family.R_GENERAL:
            assert self.params is not None
            deltas = "[" + ", ".join(format_rational(d) for d in self.params.deltas) + "]"
            return (
                f"{family}(e={_list_text(self.params.block_dims_e)}, delta={deltas}, "
                f"f={_list_text(self.params.f_blocks)})"
            )
        return family


class TrialResult(BaseModel):
    """Outcome of one fuzz trial."""

    model_config = _FROZEN

    index: int
    passed: bool
    detail: str = ""
    scramble: Matrix | None = Field(default=None, description="Basis change used by the trial")


class FuzzReport(BaseModel):
    """Per-trial outcomes of a classification round-trip run."""

    model_config = _FROZEN

    label: str = Field(description="Expected canonical label")
    seed: int
    results: tuple[TrialResult, ...]

    @property
    def trials(self) -> int:
        return len(self.results)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.passed)

    @property
    def all_passed(self) -> bool:
        return self.passed == self.trials

    @property
    def first_failure(self) -> TrialResult | None:
        return next((r for r in self.results if not r.passed), None)


class IsomorphismVerdict(BaseModel):
    """Catalog-based isomorphism answer.

    ``result`` is None when the catalog cannot decide. ``isomorphism`` maps the
    first algebra onto the second when ``result`` is True.
    """

    model_config = _FROZEN

    result: bool | None
    label_a: ClassLabel
    label_b: ClassLabel
    isomorphism: Matrix | None = None

    @property
    def answer(self) -> str:
        if self.result is None:
            return "indeterminate"
        return "yes" if self.result else "no"
