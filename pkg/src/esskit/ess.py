"""Exact ESS verification, invasion search, and ESS enumeration.

The stability test behind everything here: when sigma is a symmetric Nash
strategy with best-response set B, any potential invader sigma' with
u(sigma', sigma) = u(sigma, sigma) has support inside B, and for such
sigma' the difference z = sigma' - sigma satisfies

    u(sigma', sigma') - u(sigma, sigma') = z^T A z

because every pure strategy in B earns exactly u(sigma, sigma) against
sigma, making the cross term z^T A sigma vanish.  So sigma resists all
equal-payoff invaders iff z^T A z < 0 for every nonzero z in the tangent
cone (directions supported on B, summing to zero, nonnegative off
support(sigma)).

That sign question is decided exactly: enumerate sign patterns (P+, P-)
of z, normalize the positive part to sum 1, and maximize the symmetrized
quadratic form over each resulting compact polytope by face/KKT
enumeration.  On every face the stationary set of the form is an affine
subspace on which the form is constant, so each face contributes at most
one candidate value, found by solving one exact linear system (plus one
exact feasibility LP when the stationary set is a positive-dimensional
family).  A maximum >= 0 yields an invader; all maxima < 0 yields an ESS
certificate listing every examined sign pattern with its exact maximum.

No tolerances appear anywhere: every comparison is an exact rational
comparison, because the reductions this package exists to check decide
outcomes on knife-edge equalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import lp
from .errors import UsageError
from .game import (
    MixedStrategy,
    SupportSet,
    SymmetricGame,
    dominance_masks,
    payoff_mixed,
    strategy_payoffs,
)

ESS = "ESS"
NOT_NASH = "NOT_NASH"
INVADED = "INVADED"


@dataclass(frozen=True)
class TangentCone:
    """Directions along which equal-payoff invaders can deviate from base."""

    base: MixedStrategy
    responses: SupportSet
    free_indices: SupportSet     # may move either way: B intersect support
    nonneg_indices: SupportSet   # must not decrease: B minus support


@dataclass(frozen=True)
class PatternProof:
    """Exact maximum of z^T A z over one sign pattern's polytope.

    positive/negative are the strategy indices allowed to gain/lose mass;
    direction is a tangent direction attaining the maximum.
    """

    positive: tuple[int, ...]
    negative: tuple[int, ...]
    maximum: Fraction
    direction: tuple[Fraction, ...]


@dataclass(frozen=True)
class EssVerdict:
    status: str
    nash_value: Fraction
    pure_payoffs: tuple[Fraction, ...]
    best_responses: SupportSet
    not_nash_witness: int | None = None
    invasion_witness: MixedStrategy | None = None
    negativity_proofs: tuple[PatternProof, ...] | None = None

    def is_ess(self) -> bool:
        return self.status == ESS


def tangent_cone(game: SymmetricGame, sigma: MixedStrategy) -> TangentCone:
    payoffs = strategy_payoffs(game, sigma)
    value = sum(sigma.probs[i] * payoffs[i] for i in sigma.support())
    if max(payoffs) != value:
        raise UsageError("tangent cone is defined only at a symmetric Nash strategy")
    responses = frozenset(i for i, v in enumerate(payoffs) if v == value)
    support = sigma.support()
    return TangentCone(sigma, responses, responses & support, responses - support)


def _iter_faces(b_sorted, supp_sorted):
    """All (F+, F-) pairs: F+ in B, F- in support, disjoint, both nonempty.

    Deterministic order, smallest faces first, so equality invaders on
    vertex pairs are found immediately.
    """
    nb = len(b_sorted)
    for total in range(2, nb + 1):
        for mlen in range(1, min(total - 1, len(supp_sorted)) + 1):
            plen = total - mlen
            for fminus in combinations(supp_sorted, mlen):
                fmset = set(fminus)
                rest = [x for x in b_sorted if x not in fmset]
                if plen > len(rest):
                    continue
                for fplus in combinations(rest, plen):
                    yield fplus, fminus


def _face_candidate(game: SymmetricGame, fplus, fminus):
    """Stationary value of the form on this face, if attained in its closure.

    Returns (value, z_on_face) or None.  The stationary set of a quadratic
    form restricted to a face's affine hull is an affine subspace on which
    the form is constant, so one linear solve plus (for families) one
    exact feasibility LP decides the face.
    """
    scale, _ia, sa = game.scaled_ints()
    face = list(fplus) + list(fminus)
    k = len(face)
    np_ = len(fplus)
    rows = []
    rhs = []
    for i in face[:np_]:
        sai = sa[i]
        rows.append([sai[j] for j in face] + [-1, 0])
        rhs.append(0)
    for i in face[np_:]:
        sai = sa[i]
        rows.append([sai[j] for j in face] + [0, -1])
        rhs.append(0)
    rows.append([1] * np_ + [0] * (k - np_) + [0, 0])
    rhs.append(1)
    rows.append([0] * np_ + [1] * (k - np_) + [0, 0])
    rhs.append(-1)

    from .linalg import solve_int_system

    sol = solve_int_system(rows, rhs)
    if sol.kind == "none":
        return None
    if sol.kind == "unique":
        z = list(sol.solution[:k])
        if any(z[t] < 0 for t in range(np_)) or any(z[t] > 0 for t in range(np_, k)):
            return None
    else:
        # Affine family of stationary points; the form is constant on it.
        # Feasibility within the closed face decided by an exact LP over
        # the family parameters.
        part = sol.solution
        basis = sol.nullspace
        d = len(basis)
        ge = []
        for t in range(np_):
            ge.append(([b[t] for b in basis], -part[t]))
        for t in range(np_, k):
            ge.append(([-b[t] for b in basis], part[t]))
        point = lp.feasible_point(ge=ge)
        if point is None:
            return None
        z = [part[t] + sum(point[r] * basis[r][t] for r in range(d)) for t in range(k)]

    total = Fraction(0)
    for a in range(k):
        za = z[a]
        if not za:
            continue
        sai = sa[face[a]]
        total += za * sum(sai[face[b]] * z[b] for b in range(k) if z[b])
    return total / (2 * scale), tuple(z)


def _compose_invader(game, sigma, face, zface) -> MixedStrategy:
    n = game.size
    z = [Fraction(0)] * n
    for pos, i in enumerate(face):
        z[i] = zface[pos]
    eps = min(sigma.probs[i] / -z[i] for i in range(n) if z[i] < 0)
    return MixedStrategy(tuple(sigma.probs[i] + eps * z[i] for i in range(n)))


def _condition_two(game, sigma, b_sorted, supp_sorted, want_proofs):
    """Decide the stability condition over the tangent cone.

    Returns (invader, proofs): invader is a MixedStrategy when some sign
    pattern admits a nonnegative maximum, else None; proofs is the full
    per-pattern maxima list when requested and no invader exists.
    """
    faces = {}
    for fplus, fminus in _iter_faces(b_sorted, supp_sorted):
        cand = _face_candidate(game, fplus, fminus)
        if cand is None:
            continue
        value, zface = cand
        if value >= 0:
            invader = _compose_invader(game, sigma, list(fplus) + list(fminus), zface)
            return invader, None
        if want_proofs:
            faces[(fplus, fminus)] = cand
    if not want_proofs:
        return None, None
    return None, _pattern_proofs(game, faces, b_sorted, supp_sorted)


def _pattern_proofs(game, faces, b_sorted, supp_sorted):
    """Aggregate face values into per-sign-pattern exact maxima.

    A pattern's polytope is the closed product of two simplices; its
    maximum is attained in the relative interior of some face, so it
    equals the best stationary candidate among the pattern's subfaces.
    Computed bottom-up over the pattern lattice.
    """
    pos_of = {s: t for t, s in enumerate(b_sorted)}
    supp_mask = 0
    for s in supp_sorted:
        supp_mask |= 1 << pos_of[s]
    full_mask = (1 << len(b_sorted)) - 1

    face_by_mask = {}
    for (fplus, fminus), (value, zface) in faces.items():
        pm = 0
        for s in fplus:
            pm |= 1 << pos_of[s]
        mm = 0
        for s in fminus:
            mm |= 1 << pos_of[s]
        face_by_mask[(pm, mm)] = ((fplus, fminus), value, zface)

    def submasks_nonempty(mask):
        sub = mask
        while sub:
            yield sub
            sub = (sub - 1) & mask

    keys = []
    for mm in submasks_nonempty(supp_mask):
        comp = full_mask & ~mm
        for pm in submasks_nonempty(comp):
            keys.append((pm, mm))
    keys.sort(key=lambda k: (bin(k[0]).count("1") + bin(k[1]).count("1"), k[1], k[0]))

    best: dict[tuple[int, int], tuple[Fraction, tuple[int, int]]] = {}
    for pm, mm in keys:
        entry = face_by_mask.get((pm, mm))
        cur = (entry[1], (pm, mm)) if entry is not None else None
        if bin(pm).count("1") >= 2:
            b = pm
            while b:
                low = b & -b
                prev = best.get((pm & ~low, mm))
                if prev is not None and (cur is None or prev[0] > cur[0]):
                    cur = prev
                b -= low
        if bin(mm).count("1") >= 2:
            b = mm
            while b:
                low = b & -b
                prev = best.get((pm, mm & ~low))
                if prev is not None and (cur is None or prev[0] > cur[0]):
                    cur = prev
                b -= low
        assert cur is not None, "every pattern contains a feasible vertex face"
        best[(pm, mm)] = cur

    n = game.size
    proofs = []
    for pm, mm in keys:
        value, winner = best[(pm, mm)]
        (fplus, fminus), _v, zface = face_by_mask[winner]
        z = [Fraction(0)] * n
        for pos, i in enumerate(list(fplus) + list(fminus)):
            z[i] = zface[pos]
        positive = tuple(b_sorted[t] for t in range(len(b_sorted)) if pm >> t & 1)
        negative = tuple(b_sorted[t] for t in range(len(b_sorted)) if mm >> t & 1)
        proofs.append(PatternProof(positive, negative, value, tuple(z)))
    return tuple(proofs)


def verify_ess(game: SymmetricGame, sigma: MixedStrategy, proofs: bool = True) -> EssVerdict:
    """Full ESS verdict with machine-checkable supporting data.

    Status ESS iff sigma is a symmetric Nash strategy and every
    alternative best response strictly loses to itself compared with how
    sigma fares against it.  NOT_NASH carries the smallest-index pure
    violator; INVADED carries an explicit invader, already re-checked in
    exact arithmetic.
    """
    if len(sigma) != game.size:
        raise UsageError("strategy length does not match the game")
    payoffs = strategy_payoffs(game, sigma)
    value = sum(sigma.probs[i] * payoffs[i] for i in sigma.support())
    top = max(payoffs)
    responses = frozenset(i for i, v in enumerate(payoffs) if v == top)
    if top > value:
        violator = min(i for i in range(game.size) if payoffs[i] > value)
        return EssVerdict(NOT_NASH, value, payoffs, responses, not_nash_witness=violator)

    supp_sorted = sorted(sigma.support())
    b_sorted = sorted(responses)
    invader, pattern_proofs = _condition_two(game, sigma, b_sorted, supp_sorted, proofs)
    if invader is not None:
        assert payoff_mixed(game, invader, sigma) == value
        assert payoff_mixed(game, invader, invader) >= payoff_mixed(game, sigma, invader)
        return EssVerdict(INVADED, value, payoffs, responses, invasion_witness=invader)
    if pattern_proofs is not None:
        assert all(p.maximum < 0 for p in pattern_proofs)
    return EssVerdict(ESS, value, payoffs, responses, negativity_proofs=pattern_proofs)


def invasion_search(game: SymmetricGame, sigma: MixedStrategy) -> MixedStrategy | None:
    """Search for an equal-payoff invader of a symmetric Nash strategy.

    Raises UsageError when sigma is not Nash (call verify_ess for the
    full trichotomy).  Returns None exactly when sigma is an ESS.
    """
    nash, violator = _nash_data(game, sigma)
    if not nash:
        raise UsageError(
            f"invasion_search requires a symmetric Nash strategy; pure strategy "
            f"{violator} earns more against it"
        )
    payoffs = strategy_payoffs(game, sigma)
    value = sum(sigma.probs[i] * payoffs[i] for i in sigma.support())
    b_sorted = sorted(i for i, v in enumerate(payoffs) if v == value)
    invader, _ = _condition_two(game, sigma, b_sorted, sorted(sigma.support()), False)
    return invader


def _nash_data(game, sigma):
    payoffs = strategy_payoffs(game, sigma)
    value = sum(sigma.probs[i] * payoffs[i] for i in sigma.support())
    for s, v in enumerate(payoffs):
        if v > value:
            return False, s
    return True, None


def tangent_identity_check(game: SymmetricGame, sigma: MixedStrategy, other: MixedStrategy):
    """(u(s',s') - u(s,s'), z^T A z) with z = s' - s; the two must agree.

    Regression guard for the algebraic identity the whole stability test
    rests on.  Requires sigma to be symmetric Nash with support(other)
    inside its best-response set, otherwise the cross term does not
    vanish and the identity is meaningless.
    """
    if len(sigma) != game.size or len(other) != game.size:
        raise UsageError("strategy length does not match the game")
    payoffs = strategy_payoffs(game, sigma)
    value = sum(sigma.probs[i] * payoffs[i] for i in sigma.support())
    if max(payoffs) != value:
        raise UsageError("base strategy must be a symmetric Nash strategy")
    responses = {i for i, v in enumerate(payoffs) if v == value}
    if not other.support() <= responses:
        raise UsageError("the comparison strategy must be supported on best responses")

    lhs = payoff_mixed(game, other, other) - payoff_mixed(game, sigma, other)
    z = [other.probs[i] - sigma.probs[i] for i in range(game.size)]
    rhs = Fraction(0)
    for i in range(game.size):
        if z[i]:
            row = game.payoff[i]
            rhs += z[i] * sum(row[j] * z[j] for j in range(game.size) if z[j])
    return lhs, rhs


def _indifference_solution(game: SymmetricGame, support) -> MixedStrategy | None:
    """The unique full-support equalizer on this support, if there is one.

    Solves {u(s, sigma) equal for s in support; probabilities sum to 1;
    zero off support}.  Supports whose system is inconsistent, has a
    solution family (no ESS can live on such a support; see the design
    notes), or whose unique solution is not strictly positive are
    rejected.
    """
    from .linalg import solve_int_system

    n = game.size
    k = len(support)
    if k == 1:
        return MixedStrategy.pure(n, support[0])
    _scale, ia, _sa = game.scaled_ints()
    anchor = ia[support[0]]
    rows = []
    rhs = []
    for idx in support[1:]:
        other = ia[idx]
        rows.append([anchor[j] - other[j] for j in support])
        rhs.append(0)
    rows.append([1] * k)
    rhs.append(1)
    sol = solve_int_system(rows, rhs)
    if sol.kind != "unique":
        return None
    if any(v <= 0 for v in sol.solution):
        return None
    probs = [Fraction(0)] * n
    for pos, idx in enumerate(support):
        probs[idx] = sol.solution[pos]
    return MixedStrategy(tuple(probs))


def _support_pruned(combo, smask, dominators) -> bool:
    # A support is dead when one member is weakly dominated, with at
    # least one strict column inside the support, by any strategy: the
    # member then cannot be indifferent-and-optimal under full support.
    for b in combo:
        for a, ltm, gtm in dominators[b]:
            if not (ltm & smask) and (gtm & smask):
                return True
    return False


def nash_candidates(game: SymmetricGame, restriction=None, max_support: int | None = None):
    """Yield (support, sigma) for every unique-equalizer symmetric Nash point.

    Supports are enumerated by increasing size, then lexicographically,
    within the restriction when one is given.  Every yielded sigma has
    been checked to be a symmetric Nash strategy of the full game.
    """
    n = game.size
    if restriction is None:
        allowed = list(range(n))
    else:
        allowed = sorted(set(restriction))
        if not allowed:
            raise UsageError("restriction must name at least one strategy")
        if not all(0 <= i < n for i in allowed):
            raise UsageError(f"restriction out of range: {sorted(restriction)!r}")
    cap = len(allowed) if max_support is None else min(max_support, len(allowed))
    dominators = dominance_masks(game)
    for size in range(1, cap + 1):
        for combo in combinations(allowed, size):
            smask = 0
            for i in combo:
                smask |= 1 << i
            if _support_pruned(combo, smask, dominators):
                continue
            sigma = _indifference_solution(game, combo)
            if sigma is None:
                continue
            nash, _ = _nash_data(game, sigma)
            if nash:
                yield combo, sigma


def find_ess(
    game: SymmetricGame,
    restriction=None,
    *,
    proofs: bool = True,
    stop_after: int | None = None,
    max_support: int | None = None,
):
    """All ESS of the game, optionally with support restricted to a set.

    The restriction constrains only where the ESS may place mass;
    candidate invaders always range over the full strategy set.  Returns
    a list of (MixedStrategy, EssVerdict) in support-size order.
    ``stop_after`` truncates the search after that many ESS have been
    found (existence checks pass 1); ``max_support`` caps the enumerated
    support size.
    """
    results = []
    for _combo, sigma in nash_candidates(game, restriction, max_support):
        verdict = verify_ess(game, sigma, proofs=proofs)
        if verdict.status == ESS:
            results.append((sigma, verdict))
            if stop_after is not None and len(results) >= stop_after:
                break
    return results
