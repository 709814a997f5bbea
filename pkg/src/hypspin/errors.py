"""Exception hierarchy shared by all modules.

Every error carries a stable ``code`` string so the CLI can report it as
structured JSON.
"""
from __future__ import annotations


class HypSpinError(Exception):
    code = "error"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


# field arithmetic
class ZeroInverse(HypSpinError, ZeroDivisionError):
    code = "zero_inverse"


class ZeroInput(HypSpinError, ValueError):
    code = "zero_input"


class UnsupportedField(HypSpinError, ValueError):
    code = "unsupported_field"


class FieldMismatch(HypSpinError, ValueError):
    code = "field_mismatch"


class ParseError(HypSpinError, ValueError):
    code = "parse_error"

    def __init__(self, message: str, position: int | str | None = None):
        super().__init__(message if position is None else f"{message} (at {position})")
        self.position = position

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["position"] = self.position
        return d


# shapes and ranks
class RankMismatch(HypSpinError, ValueError):
    code = "rank_mismatch"


class RankBoundExceeded(HypSpinError, ValueError):
    code = "rank_bound_exceeded"


class IndexOutOfRange(HypSpinError, IndexError):
    code = "index_out_of_range"


class SingularMatrix(HypSpinError, ValueError):
    code = "singular_matrix"


# Clifford side
class NotAUnit(HypSpinError, ValueError):
    code = "not_a_unit"


class NotEven(HypSpinError, ValueError):
    code = "not_even"


# orthogonal side
class IsotropicVector(HypSpinError, ValueError):
    code = "isotropic_vector"


class NotIsotropicPair(HypSpinError, ValueError):
    code = "not_isotropic_pair"


class BadPairing(HypSpinError, ValueError):
    code = "bad_pairing"


class ZeroParameter(HypSpinError, ValueError):
    code = "zero_parameter"


class EqualIndices(HypSpinError, ValueError):
    code = "equal_indices"


class IndicesNotDistinct(HypSpinError, ValueError):
    code = "indices_not_distinct"


# lifts and decisions
class NeedRankAtLeast2(HypSpinError, ValueError):
    code = "need_rank_at_least_2"


class NeedRankAtLeast3(HypSpinError, ValueError):
    code = "need_rank_at_least_3"


class NonSquareDeterminant(HypSpinError, ValueError):
    code = "nonsquare_determinant"

    def __init__(self, det, message: str | None = None):
        super().__init__(message or f"determinant {det} is not a square")
        self.det = det

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["det_class"] = str(self.det)
        return d


class NotALeviLift(HypSpinError, ValueError):
    code = "not_a_levi_lift"


class DecompositionFails(HypSpinError, ValueError):
    code = "decomposition_fails"


class NormIdentityFails(HypSpinError, ValueError):
    code = "norm_identity_fails"
