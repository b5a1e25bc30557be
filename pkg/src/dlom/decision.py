"""Preference elicitation, weighted overall scoring, ranking, and the
decision-support session state machine."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

from .errors import DlomError
from .schema import (
    OBJECTIVES,
    ModelRecord,
    Objective,
    ObjectiveScores,
    ObjectiveWeights,
)
from .query import Query, evaluate
from . import synthesis

__all__ = [
    "Intensity",
    "PairwiseComparison",
    "derive_weights",
    "consistency_score",
    "overall_score",
    "rank_models",
    "SessionState",
    "OutcomeKind",
    "SessionOutcome",
    "DssSession",
    "SubmitCriteria",
    "RunQuery",
    "SubmitComparisons",
    "Rank",
    "Choose",
    "BuildNew",
    "Abandon",
    "ProtocolError",
    "advance_session",
]


class Intensity(Enum):
    """The four elicitation intensities and their importance ratios."""

    EQUAL = "equal"
    WEAK = "weak"
    STRONGER = "stronger"
    ABSOLUTE = "absolute"

    @property
    def ratio(self) -> float:
        return _INTENSITY_RATIO[self]


_INTENSITY_RATIO = {
    Intensity.EQUAL: 1.0,
    Intensity.WEAK: 3.0,
    Intensity.STRONGER: 5.0,
    Intensity.ABSOLUTE: 9.0,
}


@dataclass(frozen=True)
class PairwiseComparison:
    """A directed importance judgment: ``more_important`` dominates
    ``less_important`` by ``intensity``.

    An explicit numeric ``ratio`` may replace the four-level intensity when a
    judgment carries an exact importance ratio (>= 1); exactly one of the two
    must be given.
    """

    more_important: Objective
    less_important: Objective
    intensity: Optional[Intensity] = None
    ratio: Optional[float] = None

    def __post_init__(self):
        if self.more_important == self.less_important:
            raise ValueError("a comparison needs two distinct objectives")
        if (self.intensity is None) == (self.ratio is None):
            raise ValueError("give exactly one of intensity or ratio")
        if self.ratio is not None and self.ratio <= 0:
            raise ValueError(f"ratio must be positive, got {self.ratio}")

    @property
    def importance_ratio(self) -> float:
        return self.ratio if self.ratio is not None else self.intensity.ratio


def _comparison_edges(
    comparisons: Sequence[PairwiseComparison],
) -> list[tuple[int, int, float]]:
    # last judgment wins per unordered objective pair
    index = {o: i for i, o in enumerate(OBJECTIVES)}
    latest: dict[frozenset, PairwiseComparison] = {}
    for comparison in comparisons:
        key = frozenset((comparison.more_important, comparison.less_important))
        latest[key] = comparison
    return [
        (index[c.more_important], index[c.less_important], c.importance_ratio)
        for c in latest.values()
    ]


def derive_weights(comparisons: Sequence[PairwiseComparison]) -> ObjectiveWeights:
    """Derive normalized objective weights from pairwise judgments.

    Judgments form a graph over the six objectives with edge values
    ln(ratio); the log-weights solve the least-squares system with zero mean
    on each connected component (the minimum-norm solution), so incomplete
    and inconsistent judgment sets always yield a valid weight vector. Exact,
    complete ratio sets are recovered exactly.
    """
    edges = _comparison_edges(comparisons)
    if not edges:
        return ObjectiveWeights.uniform()
    A = np.zeros((len(edges), 6))
    b = np.zeros(len(edges))
    for row, (more, less, ratio) in enumerate(edges):
        A[row, more] = 1.0
        A[row, less] = -1.0
        b[row] = math.log(ratio)
    log_weights, *_ = np.linalg.lstsq(A, b, rcond=None)
    weights = np.exp(log_weights)
    weights /= weights.sum()
    return ObjectiveWeights(*weights.tolist())


def consistency_score(comparisons: Sequence[PairwiseComparison]) -> float:
    """RMS residual of the fitted log-ratios; 0 means perfectly consistent."""
    edges = _comparison_edges(comparisons)
    if not edges:
        return 0.0
    weights = derive_weights(comparisons).as_tuple()
    residuals = [
        math.log(ratio) - (math.log(weights[more]) - math.log(weights[less]))
        for more, less, ratio in edges
    ]
    return math.sqrt(sum(r * r for r in residuals) / len(residuals))


def overall_score(weights: ObjectiveWeights, scores: ObjectiveScores) -> float:
    """The weighted overall score: the dot product of weights and ratings."""
    return sum(weights[o] * scores[o] for o in OBJECTIVES)


def rank_models(
    weights: ObjectiveWeights, models: Sequence[ModelRecord]
) -> list[tuple[str, float]]:
    """Rank models by overall score, descending.

    Ties break by higher rating aggregate, then newer creation year, then
    lexicographic id.
    """
    scored = [(m, overall_score(weights, m.rating)) for m in models]
    scored.sort(key=lambda pair: (-pair[1], -pair[0].rating_aggregate,
                                  -pair[0].created_year, pair[0].id))
    return [(m.id, score) for m, score in scored]


# --- DSS session state machine ----------------------------------------------


class SessionState(Enum):
    CREATED = "Created"
    CRITERIA_COLLECTED = "CriteriaCollected"
    QUERIED = "Queried"
    ELICITED = "Elicited"
    RANKED = "Ranked"
    CLOSED = "Closed"


class OutcomeKind(Enum):
    CHOSEN = "chosen"
    SYNTHESIZED = "synthesized"
    ABANDONED = "abandoned"


@dataclass(frozen=True)
class SessionOutcome:
    kind: OutcomeKind
    model_id: Optional[str] = None


@dataclass(frozen=True)
class SubmitCriteria:
    query: Query


@dataclass(frozen=True)
class RunQuery:
    models: tuple[ModelRecord, ...]

    def __post_init__(self):
        object.__setattr__(self, "models", tuple(self.models))


@dataclass(frozen=True)
class SubmitComparisons:
    comparisons: tuple[PairwiseComparison, ...]

    def __post_init__(self):
        object.__setattr__(self, "comparisons", tuple(self.comparisons))


@dataclass(frozen=True)
class Rank:
    pass


@dataclass(frozen=True)
class Choose:
    model_id: str


@dataclass(frozen=True)
class BuildNew:
    max_methods: Optional[int] = None


@dataclass(frozen=True)
class Abandon:
    pass


Event = Union[SubmitCriteria, RunQuery, SubmitComparisons, Rank, Choose, BuildNew, Abandon]


class ProtocolError(DlomError):
    """An event arrived in a state where it is not legal."""

    def __init__(self, state: SessionState, event: Event):
        self.state = state
        self.event = event
        super().__init__(
            f"event {type(event).__name__} is not legal in state {state.value}"
        )


@dataclass(frozen=True)
class DssSession:
    """One decision-support interaction, advanced by :func:`advance_session`.

    ``candidate_records`` holds the matched models so ranking needs no second
    repository read; ``candidates`` exposes just the ids. A draft produced by
    ``BuildNew`` is attached for the caller to persist.
    """

    id: str
    state: SessionState = SessionState.CREATED
    criteria: Optional[Query] = None
    candidate_records: tuple[ModelRecord, ...] = ()
    weights: Optional[ObjectiveWeights] = None
    consistency: float = 0.0
    ranking: tuple[tuple[str, float], ...] = ()
    outcome: Optional[SessionOutcome] = None
    draft: Optional[ModelRecord] = None

    @property
    def candidates(self) -> list[str]:
        return [record.id for record in self.candidate_records]


def advance_session(session: DssSession, event: Event) -> DssSession:
    """Apply one event and return the successor session.

    Legal events per state:

    - Created: SubmitCriteria, Abandon
    - CriteriaCollected: RunQuery, Abandon
    - Queried: SubmitComparisons (if any candidates), Rank (if exactly one
      candidate; weights default to uniform), BuildNew, Abandon
    - Elicited: Rank, BuildNew, Abandon
    - Ranked: Choose, BuildNew, Abandon
    - Closed: nothing

    Any other pairing raises :class:`ProtocolError` naming state and event.
    """
    state = session.state
    if isinstance(event, Abandon) and state is not SessionState.CLOSED:
        return replace(
            session,
            state=SessionState.CLOSED,
            outcome=SessionOutcome(OutcomeKind.ABANDONED),
        )
    if isinstance(event, SubmitCriteria) and state is SessionState.CREATED:
        return replace(
            session, state=SessionState.CRITERIA_COLLECTED, criteria=event.query
        )
    if isinstance(event, RunQuery) and state is SessionState.CRITERIA_COLLECTED:
        matched = evaluate(session.criteria, list(event.models))
        return replace(
            session, state=SessionState.QUERIED, candidate_records=tuple(matched)
        )
    if isinstance(event, SubmitComparisons) and state is SessionState.QUERIED:
        if not session.candidate_records:
            raise ProtocolError(state, event)
        return replace(
            session,
            state=SessionState.ELICITED,
            weights=derive_weights(event.comparisons),
            consistency=consistency_score(event.comparisons),
        )
    if isinstance(event, Rank):
        if state is SessionState.ELICITED:
            weights = session.weights
        elif state is SessionState.QUERIED and len(session.candidate_records) == 1:
            # a single candidate needs no elicitation
            weights = ObjectiveWeights.uniform()
        else:
            raise ProtocolError(state, event)
        ranking = rank_models(weights, session.candidate_records)
        return replace(
            session, state=SessionState.RANKED, weights=weights,
            ranking=tuple(ranking),
        )
    if isinstance(event, Choose) and state is SessionState.RANKED:
        if event.model_id not in session.candidates:
            raise ValueError(f"model {event.model_id!r} is not among the candidates")
        return replace(
            session,
            state=SessionState.CLOSED,
            outcome=SessionOutcome(OutcomeKind.CHOSEN, event.model_id),
        )
    if isinstance(event, BuildNew) and state in (
        SessionState.QUERIED,
        SessionState.ELICITED,
        SessionState.RANKED,
    ):
        weights = session.weights or ObjectiveWeights.uniform()
        result = synthesis.synthesize(weights, event.max_methods)
        draft = synthesis.draft_model(result, session.criteria, weights)
        return replace(
            session,
            state=SessionState.CLOSED,
            outcome=SessionOutcome(OutcomeKind.SYNTHESIZED, draft.id),
            draft=draft,
        )
    raise ProtocolError(state, event)
