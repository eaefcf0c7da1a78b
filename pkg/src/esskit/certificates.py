"""Self-contained ESS verdict certificates.

A certificate plus the game file is enough to re-check every asserted
exact (in)equality without rerunning any search: Nash data is a matrix
evaluation, an invasion witness is four payoff evaluations, and each
negativity entry carries the sign pattern, its exact maximum, and a
direction attaining it.  The game hash ties a certificate to the exact
game it was issued for.
"""

from __future__ import annotations

from fractions import Fraction
from importlib import metadata

from .ess import ESS, INVADED, NOT_NASH, EssVerdict, PatternProof, verify_ess
from .errors import ValidationError
from .formats import game_sha256
from .game import MixedStrategy, SymmetricGame, payoff_mixed, strategy_payoffs
from .rational import format_rational, format_rational_vector, parse_rational

FORMAT = "esskit-certificate/1"


def _version() -> str:
    try:
        return metadata.version("esskit")
    except metadata.PackageNotFoundError:
        return "unknown"


def certificate_document(
    game: SymmetricGame,
    sigma: MixedStrategy,
    verdict: EssVerdict,
    provenance: dict | None = None,
) -> dict:
    doc = {
        "format": FORMAT,
        "tool": {"name": "esskit", "version": _version()},
        "game": {"sha256": game_sha256(game), "strategies": list(game.strategy_names)},
        "strategy": format_rational_vector(sigma.probs),
        "status": verdict.status,
        "nash": {
            "value": format_rational(verdict.nash_value),
            "pure_payoffs": format_rational_vector(verdict.pure_payoffs),
            "best_responses": sorted(verdict.best_responses),
        },
    }
    if verdict.status == NOT_NASH:
        doc["not_nash"] = {
            "violator": verdict.not_nash_witness,
            "payoff": format_rational(verdict.pure_payoffs[verdict.not_nash_witness]),
        }
    if verdict.status == INVADED:
        witness = verdict.invasion_witness
        doc["invasion"] = {
            "witness": format_rational_vector(witness.probs),
            "witness_vs_base": format_rational(payoff_mixed(game, witness, sigma)),
            "base_vs_base": format_rational(verdict.nash_value),
            "witness_vs_witness": format_rational(payoff_mixed(game, witness, witness)),
            "base_vs_witness": format_rational(payoff_mixed(game, sigma, witness)),
        }
    if verdict.status == ESS and verdict.negativity_proofs is not None:
        doc["negativity"] = [
            {
                "positive": list(p.positive),
                "negative": list(p.negative),
                "max": format_rational(p.maximum),
                "direction": format_rational_vector(p.direction),
            }
            for p in verdict.negativity_proofs
        ]
    if provenance:
        doc["provenance"] = provenance
    return doc


def check_certificate(game: SymmetricGame, doc: dict, recompute: bool = False) -> list[str]:
    """Re-verify a certificate against a game; returns a list of problems.

    The default pass re-checks everything checkable from the document
    alone in exact arithmetic: the hash binding, the Nash data, witness
    payoff (in)equalities, the sign of every negativity maximum, and that
    each claimed maximizing direction is a tangent direction attaining
    its pattern's claimed value.  ``recompute`` additionally reruns the
    verdict and compares statuses.
    """
    problems: list[str] = []
    if doc.get("format") != FORMAT:
        problems.append(f"unknown certificate format {doc.get('format')!r}")
        return problems
    if doc["game"]["sha256"] != game_sha256(game):
        problems.append("game hash mismatch: certificate was issued for a different game")
        return problems

    try:
        sigma = MixedStrategy(tuple(parse_rational(v) for v in doc["strategy"]))
    except ValidationError as exc:
        return problems + [f"strategy vector invalid: {exc}"]

    payoffs = strategy_payoffs(game, sigma)
    value = sum(sigma.probs[i] * payoffs[i] for i in sigma.support())
    if format_rational(value) != doc["nash"]["value"]:
        problems.append("recomputed u(sigma, sigma) disagrees with certificate")
    if [format_rational(v) for v in payoffs] != doc["nash"]["pure_payoffs"]:
        problems.append("recomputed pure payoffs disagree with certificate")
    top = max(payoffs)
    best = sorted(i for i, v in enumerate(payoffs) if v == top)
    if best != doc["nash"]["best_responses"]:
        problems.append("recomputed best-response set disagrees with certificate")

    status = doc["status"]
    if status == NOT_NASH:
        violator = doc["not_nash"]["violator"]
        if not payoffs[violator] > value:
            problems.append("claimed Nash violator does not beat sigma")
    elif status == INVADED:
        inv = doc["invasion"]
        witness = MixedStrategy(tuple(parse_rational(v) for v in inv["witness"]))
        if witness.probs == sigma.probs:
            problems.append("invasion witness equals the certified strategy")
        wb = payoff_mixed(game, witness, sigma)
        if format_rational(wb) != inv["witness_vs_base"]:
            problems.append("witness-vs-base payoff mismatch")
        ww = payoff_mixed(game, witness, witness)
        bw = payoff_mixed(game, sigma, witness)
        strictly_better = wb > value
        ties_and_holds = wb == value and ww >= bw
        if not (strictly_better or ties_and_holds):
            problems.append("claimed witness does not actually invade")
    elif status == ESS:
        for entry in doc.get("negativity", []):
            maximum = parse_rational(entry["max"])
            if maximum >= 0:
                problems.append(
                    f"negativity entry {entry['positive']}/{entry['negative']} is not negative"
                )
            direction = [parse_rational(v) for v in entry["direction"]]
            problems.extend(
                _check_direction(game, sigma, payoffs, value, entry, direction, maximum)
            )
    else:
        problems.append(f"unknown status {status!r}")

    if recompute:
        verdict = verify_ess(game, sigma)
        if verdict.status != status:
            problems.append(
                f"recomputed status {verdict.status} disagrees with certified {status}"
            )
    return problems


def _check_direction(game, sigma, payoffs, value, entry, direction, maximum) -> list[str]:
    problems = []
    n = game.size
    pos = set(entry["positive"])
    neg = set(entry["negative"])
    support = sigma.support()
    best = {i for i, v in enumerate(payoffs) if v == value}
    if not (pos <= best and neg <= support):
        problems.append("pattern indices are outside the tangent cone")
    if sum(direction) != 0:
        problems.append("claimed direction does not sum to zero")
    if sum(direction[i] for i in pos) != 1:
        problems.append("claimed direction is not normalized on its positive part")
    for i, z in enumerate(direction):
        if z > 0 and i not in pos or z < 0 and i not in neg:
            problems.append("claimed direction leaves its sign pattern")
            break
    form = Fraction(0)
    for i in range(n):
        if direction[i]:
            row = game.payoff[i]
            form += direction[i] * sum(row[j] * direction[j] for j in range(n) if direction[j])
    if form != maximum:
        problems.append("claimed direction does not attain the claimed maximum")
    return problems
