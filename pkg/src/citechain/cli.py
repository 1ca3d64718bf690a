"""Command-line surface for distribution evaluation, sampling, and reports.

JSON mode (default) prints a single envelope object

    {"command": ..., "params": ..., "payload": ..., "diagnostics": ...}

with diagnostics carrying captured warnings, censoring fractions, and the
seed-to-stream derivation used for sampling.  CSV mode prints the tabular
core of the payload with a header row; warnings then go to standard error.

Probabilities whose natural log is below -700 would underflow a float, so
they are emitted structurally: {"log_value": L} objects in JSON and
`log:L` cells in CSV.

Exit codes: 0 success, 2 usage error (bad flags), 1 domain or validation
error (out-of-range parameters, malformed input files).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import warnings

from . import author_model, hirsch, scientometrics, streams, trial_chain

__all__ = ["main", "run"]

_LOG_FLOOR = -700.0


def _prob_json(log_value: float):
    log_value = float(log_value)  # numpy scalars render as np.float64(...) in repr
    if log_value == -math.inf:
        return 0.0
    if log_value < _LOG_FLOOR:
        return {"log_value": log_value}
    return math.exp(log_value)


def _prob_csv(log_value: float) -> str:
    log_value = float(log_value)
    if log_value == -math.inf:
        return "0.0"
    if log_value < _LOG_FLOOR:
        return f"log:{log_value!r}"
    return repr(math.exp(log_value))


def _log_or_neg_inf(value: float) -> float:
    return math.log(value) if value > 0.0 else -math.inf


class _Result:
    """One subcommand's output in both renderings."""

    def __init__(self, command, params, payload, csv_header, csv_rows, diagnostics):
        self.command = command
        self.params = params
        self.payload = payload
        self.csv_header = csv_header
        self.csv_rows = csv_rows
        self.diagnostics = diagnostics


def _parse_grid(text: str) -> tuple[int, ...]:
    try:
        grid = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"--grid must be comma-separated integers, got {text!r}") from None
    if len(grid) < 2 or sorted(grid) != list(grid) or grid[0] < 1:
        raise ValueError("--grid must be at least two increasing positive integers")
    return grid


def _cmd_pmf(a) -> _Result:
    params = trial_chain.TrialChainParams(a.p, a.gamma)
    table = trial_chain.pmf_table(params, a.n_max)
    log_probs = table.log_probs
    log_tail = table.log_tail
    if a.conditional:
        if a.gamma <= 1.0:
            raise ValueError("--conditional requires gamma > 1 (improper regime)")
        mass = trial_chain.improper_mass(params)
        shift = math.log1p(-mass)
        log_probs = log_probs - shift
        log_tail = _log_or_neg_inf(max(0.0, (table.tail - mass) / (1.0 - mass)))
    rows = [(str(n), _prob_csv(lp)) for n, lp in zip(table.indices, log_probs)]
    rows.append(("tail", _prob_csv(log_tail)))
    return _Result(
        "pmf",
        {"p": a.p, "gamma": a.gamma, "n_max": a.n_max, "conditional": bool(a.conditional)},
        {
            "start": 1,
            "probabilities": [_prob_json(lp) for lp in log_probs],
            "tail": _prob_json(log_tail),
        },
        ("n", "probability"),
        rows,
        {"warnings": []},
    )


def _cmd_tail(a) -> _Result:
    params = trial_chain.TrialChainParams(a.p, a.gamma)
    log_tails = trial_chain.tail_table(params, a.m_max)
    rows = [(str(m), _prob_csv(lt)) for m, lt in enumerate(log_tails, start=1)]
    return _Result(
        "tail",
        {"p": a.p, "gamma": a.gamma, "m_max": a.m_max},
        {"start": 1, "tails": [_prob_json(lt) for lt in log_tails]},
        ("m", "tail"),
        rows,
        {"warnings": []},
    )


def _cmd_improper_mass(a) -> _Result:
    params = trial_chain.TrialChainParams(a.p, a.gamma)
    mass = trial_chain.improper_mass(params)
    return _Result(
        "improper-mass",
        {"p": a.p, "gamma": a.gamma},
        {"improper_mass": mass},
        ("quantity", "value"),
        [("improper_mass", repr(mass))],
        {"warnings": []},
    )


def _cmd_asym(a) -> _Result:
    params = trial_chain.TrialChainParams(a.p, a.gamma)
    grid = _parse_grid(a.grid)
    estimate = trial_chain.estimate_constant(params, grid)
    ratios = [math.exp(r) for r in estimate.log_ratios]
    rows = [(str(n), repr(r)) for n, r in zip(grid, ratios)]
    rows += [
        ("constant", repr(estimate.constant)),
        ("spread", repr(estimate.spread)),
        ("regime", estimate.regime.value),
    ]
    return _Result(
        "asym",
        {"p": a.p, "gamma": a.gamma, "grid": list(grid)},
        {
            "grid": list(grid),
            "ratios": ratios,
            "log_ratios": list(estimate.log_ratios),
            "constant": estimate.constant,
            "spread": estimate.spread,
            "regime": estimate.regime.value,
        },
        ("n", "ratio"),
        rows,
        {"warnings": []},
    )


def _cmd_growing_pmf(a) -> _Result:
    params = trial_chain.GrowingChainParams(a.q, a.gamma)
    table = trial_chain.growing_pmf_table(params, a.n_max)
    rows = [(str(n), _prob_csv(lp)) for n, lp in zip(table.indices, table.log_probs)]
    rows.append(("tail", _prob_csv(table.log_tail)))
    return _Result(
        "growing-pmf",
        {"q": a.q, "gamma": a.gamma, "n_max": a.n_max},
        {
            "start": 1,
            "probabilities": [_prob_json(lp) for lp in table.log_probs],
            "tail": _prob_json(table.log_tail),
        },
        ("n", "probability"),
        rows,
        {"warnings": []},
    )


def _cmd_author_pmf(a) -> _Result:
    params = author_model.AuthorParams(a.p, a.q)
    if a.method == "hyp":
        probs = [author_model.author_pmf(params, s, strategy="hyp") for s in range(a.s_max + 1)]
    else:
        probs = [float(v) for v in author_model.author_pmf_series(params, a.s_max)]
    log_probs = [_log_or_neg_inf(v) for v in probs]
    log_tail = _log_or_neg_inf(max(0.0, 1.0 - math.fsum(probs)))
    rows = [(str(s), _prob_csv(lp)) for s, lp in enumerate(log_probs)]
    rows.append(("tail", _prob_csv(log_tail)))
    return _Result(
        "author-pmf",
        {"p": a.p, "q": a.q, "s_max": a.s_max, "method": a.method},
        {
            "start": 0,
            "probabilities": [_prob_json(lp) for lp in log_probs],
            "tail": _prob_json(log_tail),
        },
        ("s", "probability"),
        rows,
        {"warnings": []},
    )


def _cmd_hirsch_pmf(a) -> _Result:
    params = hirsch.HirschParams(a.p, a.q)
    log_probs = [hirsch.log_hirsch_pmf(params, h) for h in range(a.h_max + 1)]
    deficit = hirsch.normalization_deficit(params, a.h_max)
    rows = [(str(h), _prob_csv(lp)) for h, lp in enumerate(log_probs)]
    rows.append(("normalization_deficit", repr(deficit)))
    return _Result(
        "hirsch-pmf",
        {"p": a.p, "q": a.q, "h_max": a.h_max},
        {
            "start": 0,
            "probabilities": [_prob_json(lp) for lp in log_probs],
            "normalization_deficit": deficit,
        },
        ("h", "probability"),
        rows,
        {"warnings": []},
    )


def _sample_diagnostics(a, extra=None) -> dict:
    d = {
        "warnings": [],
        "stream_derivation": (
            f"numpy SeedSequence({a.seed}).spawn(1)[0] -> PCG64; one child "
            "stream per command invocation, consumed in draw order"
        ),
    }
    if extra:
        d.update(extra)
    return d


def _cmd_sample(a) -> _Result:
    if a.count < 1:
        raise ValueError(f"--count must be >= 1, got {a.count}")
    rng = streams.derive_streams(a.seed, 1)[0]
    base_params = {
        "model": a.model,
        "p": a.p,
        "q": a.q,
        "gamma": a.gamma,
        "count": a.count,
        "seed": a.seed,
        "cap": a.cap,
    }
    if a.model == "trial":
        params = trial_chain.TrialChainParams(a.p, a.gamma)
        values, censored = trial_chain.sample_many(params, rng, a.count, cap=a.cap)
        payload_values = [
            {"censored_at": a.cap} if c else int(v) for v, c in zip(values, censored)
        ]
        rows = [
            (str(i), "censored" if c else str(int(v)))
            for i, (v, c) in enumerate(zip(values, censored))
        ]
        frac = float(censored.mean())
        return _Result(
            "sample",
            base_params,
            {"values": payload_values, "censored_count": int(censored.sum())},
            ("index", "value"),
            rows,
            _sample_diagnostics(a, {"censoring_fraction": frac}),
        )
    if a.gamma != 1.0:
        raise ValueError(f"--model {a.model} fixes gamma = 1; got --gamma {a.gamma}")
    if a.q is None:
        raise ValueError(f"--model {a.model} requires --q")
    if a.model == "author":
        params = author_model.AuthorParams(a.p, a.q)
        papers, citations = author_model.sample_citations(params, rng, a.count, cap=a.cap)
        rows = [
            (str(i), str(int(x)), str(int(s)))
            for i, (x, s) in enumerate(zip(papers, citations))
        ]
        return _Result(
            "sample",
            base_params,
            {"papers": [int(x) for x in papers], "citations": [int(s) for s in citations]},
            ("index", "papers", "citations"),
            rows,
            _sample_diagnostics(a),
        )
    # hirsch
    mode = hirsch.HirschMode.PAPER_EVENT if a.hirsch_mode == "paper" else hirsch.HirschMode.TRUE_H
    caps = hirsch.SimulationCaps(citation_cap=a.cap)
    h, valid = hirsch.simulate_hirsch_many(
        hirsch.HirschParams(a.p, a.q), rng, a.count, mode=mode, caps=caps
    )
    base_params["hirsch_mode"] = a.hirsch_mode
    rows = [
        (str(i), str(int(v)) if ok else "no_match")
        for i, (v, ok) in enumerate(zip(h, valid))
    ]
    return _Result(
        "sample",
        base_params,
        {
            "h": [int(v) if ok else None for v, ok in zip(h, valid)],
            "no_match_count": int((~valid).sum()),
        },
        ("index", "h"),
        rows,
        _sample_diagnostics(a),
    )


def _cmd_analyze(a) -> _Result:
    source = a.fixture if a.fixture else a.input
    records = scientometrics.load_dataset(source)
    rep = scientometrics.report(records)
    payload = {
        "kappa": list(rep.kappa),
        "h_mean": rep.h_mean,
        "h_sample_sd": rep.h_sample_sd,
        "rho1": rep.rho1,
        "rho2": rep.rho2,
        "kappa_le_5_count": rep.kappa_le_5_count,
        "kappa_5_6_count": rep.kappa_5_6_count,
    }
    # CSV is the table-style rendering: kappa and sd to 2 decimals, as in
    # the source listings; JSON keeps full precision
    rows = [(f"kappa_{i}", f"{k:.2f}") for i, k in enumerate(rep.kappa, start=1)]
    rows += [
        ("h_mean", repr(rep.h_mean)),
        ("h_sample_sd", f"{rep.h_sample_sd:.2f}"),
        ("rho1", repr(rep.rho1)),
        ("rho2", repr(rep.rho2)),
        ("kappa_le_5_count", str(rep.kappa_le_5_count)),
        ("kappa_5_6_count", str(rep.kappa_5_6_count)),
    ]
    return _Result(
        "analyze",
        {"source": str(source)},
        payload,
        ("field", "value"),
        rows,
        {"warnings": []},
    )


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--format", choices=("csv", "json"), default="json", help="output format"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="citechain",
        description="Trial-chain distributions, citation models, and table analytics",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("pmf", help="trial-chain pmf table")
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--gamma", type=float, required=True)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--conditional", action="store_true",
                   help="condition on finiteness (gamma > 1 only)")
    _add_common(s)
    s.set_defaults(func=_cmd_pmf)

    s = subs.add_parser("tail", help="trial-chain tail probabilities")
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--gamma", type=float, required=True)
    s.add_argument("--m-max", type=int, required=True)
    _add_common(s)
    s.set_defaults(func=_cmd_tail)

    s = subs.add_parser("improper-mass", help="never-success probability")
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--gamma", type=float, required=True)
    _add_common(s)
    s.set_defaults(func=_cmd_improper_mass)

    s = subs.add_parser("asym", help="large-n shape ratios and constant estimate")
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--gamma", type=float, required=True)
    s.add_argument("--grid", type=str, required=True,
                   help="comma-separated increasing n values, e.g. 1000,3000,10000")
    _add_common(s)
    s.set_defaults(func=_cmd_asym)

    s = subs.add_parser("growing-pmf", help="growing-chain pmf table")
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--gamma", type=float, required=True)
    s.add_argument("--n-max", type=int, required=True)
    _add_common(s)
    s.set_defaults(func=_cmd_growing_pmf)

    s = subs.add_parser("author-pmf", help="compound citation pmf table")
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--s-max", type=int, required=True)
    s.add_argument("--method", choices=("hyp", "oracle"), default="oracle",
                   help="closed hypergeometric form or convolution series")
    _add_common(s)
    s.set_defaults(func=_cmd_author_pmf)

    s = subs.add_parser("hirsch-pmf", help="h-index pmf table with deficit")
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--h-max", type=int, required=True)
    _add_common(s)
    s.set_defaults(func=_cmd_hirsch_pmf)

    s = subs.add_parser("sample", help="seeded Monte Carlo draws")
    s.add_argument("--model", choices=("trial", "author", "hirsch"), required=True)
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--q", type=float, default=None)
    s.add_argument("--gamma", type=float, default=1.0)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--cap", type=int, default=trial_chain.DEFAULT_CAP,
                   help="trial censoring cap per chain")
    s.add_argument("--hirsch-mode", choices=("paper", "true"), default="paper")
    _add_common(s)
    s.set_defaults(func=_cmd_sample)

    s = subs.add_parser("analyze", help="citation-table report")
    group = s.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", type=str, help="CSV file path")
    group.add_argument("--fixture", choices=scientometrics.FIXTURE_NAMES)
    _add_common(s)
    s.set_defaults(func=_cmd_analyze)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse argv, execute, print the envelope; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            result = args.func(args)
        result.diagnostics["warnings"] = list(result.diagnostics.get("warnings", [])) + [
            str(w.message) for w in caught
        ]
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        envelope = {
            "command": result.command,
            "params": result.params,
            "payload": result.payload,
            "diagnostics": result.diagnostics,
        }
        print(json.dumps(envelope, indent=2, sort_keys=True))
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(result.csv_header)
        writer.writerows(result.csv_rows)
        for message in result.diagnostics["warnings"]:
            print(f"warning: {message}", file=sys.stderr)
    return 0


def main() -> None:
    sys.exit(run())
