"""Rule identifiers, the audit trail, and the errors raised by the rules."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from wittkit.involution import TatePair


class Rule(enum.Enum):
    """Each rule carries a short id and an anchor naming the result it applies."""

    WITT_FIELD = ("witt-field", "Witt groups of fields vanish outside degrees 0 mod 4")
    WITT_PRESENTATION = ("witt-presentation", "Witt presentation of W(k) by square classes")
    FUNDAMENTAL_IDEAL = ("fundamental-ideal", "I(k) is the kernel of the surjective rank map")
    K_FIELD_TABLE = ("k-field-table", "K-groups of finite fields (Quillen)")
    K_NEG_REGULAR = ("k-negative-regular", "negative K-groups vanish on regular schemes")
    K_NEG_NODE = ("k-negative-node", "negative K-theory of the node is S^-1 Z")
    HOMOTOPY_INVARIANCE = ("homotopy-invariance", "L-theory and higher Witt groups are homotopy invariant")
    REGULAR_HOMOTOPY_INVARIANCE = ("regular-homotopy-invariance", "K and GW are homotopy invariant on regular schemes")
    TATE_HYPOTHESIS = ("tate-hypothesis", "Tate cohomology of K_-1 vanishes in degrees 0 and 1")
    WITT_PUNCTURED = ("witt-punctured", "W^r(X x C_n) = W^r(X) + W^(r+1-n)(X) when the Tate obstruction vanishes")
    WITT_PUNCTURED_LES = ("witt-punctured-les", "fibration with fibre S^(r-n-1) Tate(K_-1) for L-theory of X x C_n")
    BASS_WITT = ("bass-witt", "Bass fundamental theorem for W_0 under vanishing H*(Z/2, K_-1)")
    K_PUNCTURED = ("k-punctured", "K(X x C_n) = K(X) + S K(X) + two relative terms")
    KH_PUNCTURED = ("kh-punctured", "KH(X x C_n) = KH(X) + S KH(X)")
    GW_PUNCTURED = ("gw-punctured", "GW^[r](X x C_n) = GW^[r](X) + S GW^[r-n](X) + two relative terms")
    RELATIVE_REGULAR = ("relative-regular", "relative terms vanish for regular X")
    HIGHER_WITT_PUNCTURED = ("higher-witt-punctured", "W^[r]_i(X x C_n) = W^[r]_i(X) + W^[r-n]_(i-1)(X), likewise coWitt")
    HIGHER_WITT_PERIODIC = ("higher-witt-periodic", "higher Witt and coWitt groups are 4-periodic in r")
    NODE_STABLE_L = ("node-stable-l", "stabilized L-theory of the node is L(k) + Omega L(k)")
    NODE_SEQUENCES = ("node-sequences", "exact sequences L_n(R) -> L_n^stab(R) -> Tate(K_<0 R)")
    NODE_RANK_MAP = ("node-rank-map", "the boundary W(k) -> h0(Z/2, Z) is the rank map")
    NODE_SPLITTING = ("node-splitting", "W(k) -> W(R) is split by a rational point")
    NODE_LAURENT = ("node-laurent", "L(R[t,1/t]) = L(R) + L^stab(R) for curves with K_<=-2 = 0")
    NODE_LAURENT_DEGREE_ONE = ("node-laurent-degree-one", "degree-one Laurent value read off the same splitting")
    TATE_NK = ("tate-nk", "Tate cohomology of NK vanishes: NK is uniquely 2-divisible")
    GW_PROJECTIVE_TABLE = ("gw-projective-table", "GW of projective space by parity of n and twist")
    GW_PROJECTIVE_FIBRATION = ("gw-projective-fibration", "split fibration GW^[r-n](X) -> GW^[r](P^n) -> GW^[r](P^(n-1))")
    SEMI_ORTHOGONAL = ("semi-orthogonal", "additivity on the semi-orthogonal decomposition of P^n")
    TWIST_PARITY = ("twist-parity", "GW of projective space only depends on the parity of the twist")
    PERIODICITY = ("periodicity", "Balmer Witt groups are 4-periodic")

    @property
    def id(self) -> str:
        return self.value[0]

    @property
    def anchor(self) -> str:
        return self.value[1]


ANCHORS = {r.id: r.anchor for r in Rule}


@dataclass
class Trace:
    rules: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def apply(self, rule: Rule) -> None:
        if rule not in self.rules:
            self.rules.append(rule)

    def warn(self, text: str) -> None:
        if text not in self.warnings:
            self.warnings.append(text)

    def note(self, text: str) -> None:
        if text not in self.notes:
            self.notes.append(text)

    def to_json(self) -> list:
        return [{"rule": r.id, "anchor": r.anchor} for r in self.rules]


def _trace(trace: Trace | None) -> Trace:
    return trace if trace is not None else Trace()


class WittCalcError(ValueError):
    pass


class NotTabulated(WittCalcError):
    """The value is not determined by the supported tables."""


class HypothesisFailed(WittCalcError):
    """A theorem's hypothesis is checked and fails."""

    def __init__(self, message: str, pair: TatePair | None = None):
        super().__init__(message)
        self.pair = pair
