"""Three complete Bell-state analyzers: dual-Zeno (DQZ), IFM-chain, and single-QZ.

Each analyzer maps a Bell input to a detector-click pair or a photon-lost
event. Detector layout (fixed across the library):

* D1, D2: electron path detectors after the Hadamard, D2 on the lower (L)
  path that signals a plus electron superposition, D1 on the upper (U) path
  that signals minus.
* D3..D6: photon detectors. For the dual-Zeno analyzer the 50:50 splitter
  doubles each polarization over two paths, so V lands on D3 or D6 and H on
  D4 or D5 according to the apparatus path parameter m (0 or 1). m is
  treated as an opaque sign: it relabels detectors and flips the electron
  superposition sign but never changes any outcome probability.
* The IFM analyzer's photon side has only two detectors: D3 collects the
  trajectory-changed (Psi) branches and D4 the frozen (Phi) branches.
* The single-QZ analyzer identifies the state via its ancilla rather than
  these detectors; its outcomes are reported as the canonical m = 0 pairs.

Conditional correctness holds exactly in the channel model: given the
photon survives, the click pair identifies the input Bell state with
probability one, for every analyzer and every N >= 1.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from .bell import ALL_BELL_STATES, BellState
from .core import OutcomeDistribution, PureState, hadamard
from .ifm import AbsorberState
from .optics import CycleAngle, beam_splitter
from .zeno import cycle_survival, dqz_apply

ELECTRON_DETECTORS = ("D1", "D2")
PHOTON_DETECTORS = ("D3", "D4", "D5", "D6")


class AnalyzerKind(str, enum.Enum):
    DQZ = "dqz"
    IFM = "ifm"
    QZ = "qz"


@dataclass(frozen=True)
class DetectorPair:
    electron: str
    photon: str

    def __post_init__(self):
        if self.electron not in ELECTRON_DETECTORS:
            raise ValueError(f"unknown electron detector {self.electron!r}")
        if self.photon not in PHOTON_DETECTORS:
            raise ValueError(f"unknown photon detector {self.photon!r}")

    def __str__(self) -> str:
        return f"{self.electron}*{self.photon}"


@dataclass(frozen=True)
class AnalyzerOutcome:
    """One run's result: a detector pair, or the photon-lost event.

    `counterfactual_weight` is the probability that the photon never
    crossed into the absorber's channel given this outcome (the blocking
    branch weight). A lost photon certainly entered the channel, so loss
    always carries weight zero.
    """

    clicks: DetectorPair | None
    photon_lost: bool
    counterfactual_weight: float

    def __post_init__(self):
        if self.photon_lost == (self.clicks is not None):
            raise ValueError("detector pair must be present exactly when the photon survived")
        if not 0.0 <= self.counterfactual_weight <= 1.0:
            raise ValueError("counterfactual_weight must lie in [0, 1]")

    @classmethod
    def lost(cls) -> "AnalyzerOutcome":
        return cls(clicks=None, photon_lost=True, counterfactual_weight=0.0)

    @classmethod
    def detected(cls, pair: DetectorPair, counterfactual_weight: float) -> "AnalyzerOutcome":
        return cls(clicks=pair, photon_lost=False, counterfactual_weight=counterfactual_weight)


PHOTON_LOST = AnalyzerOutcome.lost()


# ---------------------------------------------------------------------------
# survival probabilities (closed forms; the element-level sims are the oracles)


def qz_ancilla_survival(n_cycles: int) -> float:
    """(1 - 3 sin^2(phi_N)/4)^N; the gate blocks with weight 3/4 each cycle.

    N = 1 is degenerate: sin(pi) = 0 makes the formula vacuously 1.
    """
    angles = CycleAngle(n_cycles)
    return float((1.0 - 0.75 * np.sin(angles.phi) ** 2) ** n_cycles)


def ifm_family_survival(bell: BellState, n_cycles: int) -> float:
    """First-stage survival of the IFM analyzer: cos^{2N} theta_N for the
    Phi family (both branches frozen), 1 for Psi (both branches fly free)."""
    if bell.family == "phi":
        angles = CycleAngle(n_cycles)
        return float(np.cos(angles.theta) ** (2 * n_cycles))
    return 1.0


def survival_probability(kind: AnalyzerKind, bell: BellState, n_cycles: int) -> float:
    """Probability that the analyzer run ends in detector clicks, per Bell input."""
    kind = AnalyzerKind(kind)
    if kind is AnalyzerKind.DQZ:
        return cycle_survival(n_cycles) ** n_cycles
    if kind is AnalyzerKind.QZ:
        return qz_ancilla_survival(n_cycles)
    return ifm_family_survival(bell, n_cycles) * cycle_survival(n_cycles) ** n_cycles


def qz_is_degenerate(n_cycles: int) -> bool:
    return n_cycles == 1


# ---------------------------------------------------------------------------
# DQZ analyzer


_PASS_SIGN_FLIP = np.diag([1.0, 1.0, -1.0, -1.0])
_HADAMARD_ON_ELECTRON = np.kron(hadamard().matrix, np.eye(2))

# Photon detector by (polarization, path parameter m).
_PHOTON_DETECTOR = {("V", 0): "D3", ("V", 1): "D6", ("H", 0): "D4", ("H", 1): "D5"}


@functools.lru_cache(maxsize=None)
def _dqz_pair_from_channel(bell: BellState, n_cycles: int, m: int) -> DetectorPair:
    """Derive the click pair by actually measuring the channel output."""
    conditional = dqz_apply(bell, n_cycles).surviving.matrix
    if m == 0:
        # The cycle operator realizes the path-y electron sign; path x flips
        # the pass amplitude.
        conditional = _PASS_SIGN_FLIP @ conditional @ _PASS_SIGN_FLIP
    h = _HADAMARD_ON_ELECTRON
    after = h @ conditional @ h.conj().T
    probs = np.real(np.diag(after))
    top = int(np.argmax(probs))
    if probs[top] < 1.0 - 1e-9:
        raise AssertionError(f"analyzer conditional correctness violated: {probs}")
    # Slots: (block,H), (block,V), (pass,H), (pass,V); block path = L = D2.
    electron = "D2" if top < 2 else "D1"
    polarization = "H" if top % 2 == 0 else "V"
    return DetectorPair(electron, _PHOTON_DETECTOR[(polarization, m)])


def dqz_analyze(bell: BellState, n_cycles: int, m: int = 0) -> OutcomeDistribution:
    """Dual-Zeno Bell analysis: polarization splits the family, the electron
    Hadamard plus path measurement splits the sign.

    With probability P^N the photon survives and the pair identifies the
    state with certainty; otherwise the photon is lost. The surviving click
    is listed first (samplers rely on the order).
    """
    if m not in (0, 1):
        raise ValueError("m must be 0 or 1")
    p = survival_probability(AnalyzerKind.DQZ, bell, n_cycles)
    pair = _dqz_pair_from_channel(bell, n_cycles, m)
    # Surviving runs keep the block/pass balance, so the photon stayed out of
    # the channel with probability 1/2.
    return OutcomeDistribution([
        (AnalyzerOutcome.detected(pair, 0.5), p),
        (PHOTON_LOST, 1.0 - p),
    ])


# ---------------------------------------------------------------------------
# IFM analyzer

ELECTRON_PATHS = ("a", "b")
PHOTON_PATHS = ("c1", "c2", "d1", "d2")
IFM_JOINT_LABELS = tuple(f"{e},{p}" for e in ELECTRON_PATHS for p in PHOTON_PATHS)


def ifm_bell_input(bell: BellState) -> PureState:
    """Bell state in the IFM analyzer geometry.

    Electron-in-b is the 0 (blocking-the-d-chain) electron state and the
    photon starts in c2 or d2; electron-in-a blocks the c chain.
    """
    sq2 = np.sqrt(2.0)
    if bell.family == "phi":
        terms = {"b,d2": 1 / sq2, "a,c2": bell.sign / sq2}
    else:
        terms = {"b,c2": 1 / sq2, "a,d2": bell.sign / sq2}
    return PureState.from_terms(IFM_JOINT_LABELS, terms)


def ifm_stage1_evolve(bell: BellState, n_cycles: int) -> tuple[PureState, float]:
    """First-stage joint evolution: two interleaved chains, each blocked by
    one electron path. Returns the unnormalized surviving state and its
    survival probability.
    """
    angles = CycleAngle(n_cycles)
    rot = beam_splitter(angles.theta).matrix.real
    amps = ifm_bell_input(bell).amplitudes.copy()
    index = {label: i for i, label in enumerate(IFM_JOINT_LABELS)}

    def pair_slots(electron, start, end):
        return index[f"{electron},{start}"], index[f"{electron},{end}"]

    chains = []
    for electron in ELECTRON_PATHS:
        chains.append(pair_slots(electron, "c2", "c1"))
        chains.append(pair_slots(electron, "d2", "d1"))
    absorb = (index["a,c1"], index["b,d1"])
    for _ in range(n_cycles):
        for start, end in chains:
            a2, a1 = amps[start], amps[end]
            amps[start] = rot[0, 0] * a2 + rot[0, 1] * a1
            amps[end] = rot[1, 0] * a2 + rot[1, 1] * a1
        for slot in absorb:
            amps[slot] = 0.0
    state = PureState(IFM_JOINT_LABELS, amps, require_normalized=False)
    return state, state.norm_squared()


def _ifm_click_pair(bell: BellState) -> DetectorPair:
    electron = "D2" if bell.sign > 0 else "D1"
    photon = "D4" if bell.family == "phi" else "D3"
    return DetectorPair(electron, photon)


def ifm_analyze(bell: BellState, n_cycles: int) -> OutcomeDistribution:
    """IFM-chain Bell analysis.

    Stage one freezes the Phi branches (survival cos^{2N} theta_N) and walks
    the Psi photon to the D3 side; stage two resolves the sign through the
    electron Hadamard at the per-cycle Bell survival cost. Averaged over a
    uniform Bell mixture the total survival is
    (cos^{2N} theta_N + 1)/2 * (1 - sin^2(theta_N)/2)^N.
    """
    p = survival_probability(AnalyzerKind.IFM, bell, n_cycles)
    # Phi branches never cross into the electron's chain; Psi branches do.
    weight = 1.0 if bell.family == "phi" else 0.0
    return OutcomeDistribution([
        (AnalyzerOutcome.detected(_ifm_click_pair(bell), weight), p),
        (PHOTON_LOST, 1.0 - p),
    ])


# ---------------------------------------------------------------------------
# QZ analyzer

CONTROL_TARGET_LABELS = ("0C,0T", "0C,1T", "1C,0T", "1C,1T")


def qz_collapsed_state(bell: BellState) -> PureState:
    """Post-absorption collapse of the entangled pair.

    When the ancilla is absorbed, each Bell state collapses onto the
    blocking three-term superposition over the control/target presence
    basis. The four results are normalized but pairwise non-orthogonal with
    inner products of magnitude 1/3.
    """
    sq3 = np.sqrt(3.0)
    second = 1.0 if bell.family == "phi" else -1.0
    return PureState(CONTROL_TARGET_LABELS,
                     [1 / sq3, second / sq3, bell.sign / sq3, 0.0])


def _qz_click_pair(bell: BellState) -> DetectorPair:
    electron = "D2" if bell.sign > 0 else "D1"
    photon = "D3" if bell.family == "phi" else "D4"
    return DetectorPair(electron, photon)


def qz_analyze(bell: BellState, n_cycles: int) -> OutcomeDistribution:
    """Single-QZ Bell analysis with an ancillary H photon.

    The ancilla cycles through the gate with both entangled particles acting
    as absorbers; it survives all N cycles with probability
    (1 - 3 sin^2(phi_N)/4)^N, in which case the four Bell states are
    identified with certainty. On absorption the pair collapses to the
    non-orthogonal states of qz_collapsed_state and the run is lost.
    N = 1 is degenerate (sin(pi) = 0 makes survival vacuously 1).
    """
    p = survival_probability(AnalyzerKind.QZ, bell, n_cycles)
    # The gate blocks in three of the four equal-weight branches.
    return OutcomeDistribution([
        (AnalyzerOutcome.detected(_qz_click_pair(bell), 0.75), p),
        (PHOTON_LOST, 1.0 - p),
    ])


# ---------------------------------------------------------------------------
# dispatch and counterfactual accounting


def analyze(kind: AnalyzerKind, bell: BellState, n_cycles: int, m: int = 0) -> OutcomeDistribution:
    kind = AnalyzerKind(kind)
    if kind is AnalyzerKind.DQZ:
        return dqz_analyze(bell, n_cycles, m)
    if kind is AnalyzerKind.IFM:
        return ifm_analyze(bell, n_cycles)
    return qz_analyze(bell, n_cycles)


def click_pair(kind: AnalyzerKind, bell: BellState, m: int = 0) -> DetectorPair:
    """The deterministic click pair a surviving run produces."""
    kind = AnalyzerKind(kind)
    if kind is AnalyzerKind.DQZ:
        # The N-cycle operator is an exact quarter turn for every N, so the
        # pair is N-independent; any N gives the same measurement.
        return _dqz_pair_from_channel(bell, 2, m)
    if kind is AnalyzerKind.IFM:
        return _ifm_click_pair(bell)
    return _qz_click_pair(bell)


def semi_counterfactual_stats(source: BellState | AbsorberState, n_cycles: int = 1) -> float:
    """Weight of the branch where the photon never crosses the channel.

    Every Bell state splits the absorber evenly, so the weight is 1/2 at the
    input regardless of N. A classical blocking object keeps the photon out
    with certainty (given survival); a classical passing object sends it
    to-and-fro on every run.
    """
    if n_cycles < 1:
        raise ValueError("n_cycles must be >= 1")
    if isinstance(source, BellState):
        return 0.5
    if isinstance(source, AbsorberState):
        return source.block_probability
    raise TypeError(f"expected BellState or AbsorberState, got {type(source).__name__}")


def all_analyzers() -> tuple[AnalyzerKind, ...]:
    return (AnalyzerKind.DQZ, AnalyzerKind.IFM, AnalyzerKind.QZ)


__all__ = [
    "ALL_BELL_STATES",
    "AnalyzerKind",
    "AnalyzerOutcome",
    "BellState",
    "DetectorPair",
    "PHOTON_LOST",
    "analyze",
    "click_pair",
    "dqz_analyze",
    "ifm_analyze",
    "ifm_bell_input",
    "ifm_stage1_evolve",
    "qz_analyze",
    "qz_ancilla_survival",
    "qz_collapsed_state",
    "qz_is_degenerate",
    "semi_counterfactual_stats",
    "survival_probability",
]
