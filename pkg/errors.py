# ==============================================================================
# ⚠️ FEHLER-HIERARCHIE
# ------------------------------------------------------------------------------
# ZWECK:    Alle fachlichen Fehler der Prüfmaschine an einer Stelle.
#           Das CLI übersetzt jede VerificationError in Exit-Code 2.
# ==============================================================================


class VerificationError(Exception):
    """Basis aller Eingabe- und Vorbedingungsfehler."""


class NotHermitian(VerificationError):
    def __init__(self, deviation: float, tol: float):
        super().__init__(f"Matrix ist nicht hermitesch: ||M - M*|| = {deviation:.3e} > {tol:.1e}")
        self.deviation = deviation


class NotUnitary(VerificationError):
    def __init__(self, defect: float, tol: float):
        super().__init__(f"Eigenvektor-Matrix ist nicht unitär: ||U*U - I|| = {defect:.3e} > {tol:.1e}")
        self.defect = defect


class SpectrumOutOfInterval(VerificationError):
    def __init__(self, eigenvalue: float, gamma: float, Gamma: float):
        super().__init__(f"Eigenwert {eigenvalue!r} liegt ausserhalb von [{gamma!r}, {Gamma!r}]")
        self.eigenvalue = eigenvalue


class DomainViolation(VerificationError):
    def __init__(self, message: str, point: float | None = None):
        super().__init__(message)
        self.point = point


class DimensionMismatch(VerificationError):
    pass


class IntervalMismatch(VerificationError):
    pass


class NormalizationViolation(VerificationError):
    pass


class NotUnitState(NormalizationViolation):
    pass


class NonPositiveSpectrum(VerificationError):
    pass


class ArgumentOrder(VerificationError):
    pass


class NotSimilarlyOrdered(VerificationError):
    def __init__(self, i: int, j: int):
        super().__init__(f"Tupel nicht gleich geordnet: Zeugenpaar ({i}, {j})")
        self.witness = (i, j)


class ConfigInvalid(VerificationError):
    pass


class UnknownTheorem(VerificationError):
    pass


class ScenarioError(VerificationError):
    """Parse-Diagnose für Szenario-, Konfig- und Funktionsdateien."""
