"""Command-line surface: ingest -> match -> group -> evidence/stats -> report.

Subcommands: match, group, evidence, hetero, distfit, naa, report.
Every command accepts ``--format json|text`` and ``--config PATH`` (a
JSON file supplying criterion defaults, a bias table and an attenuation
table).  Exit codes: 0 success, 1 internal failure, 2 usage/validation.

Reports carry a ``decisions`` block echoing the conventions behind the
numbers (boundary handling, bias ranges, table semantics), and all
output is deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .errors import CablError
from .evidence import BoxModel, EvidenceResult, likelihood_ratio, posterior_odds
from .grouping import group, within_box_match_rate
from .ingest import FIXTURE_NAMES, Dataset, fixture, parse_csv, parse_rows
from .matching import match_specimens
from .model import (
    Basis,
    BiasCorrection,
    Boundary,
    Element,
    Location,
    MatchCriterion,
    criterion_preset,
)
from .stats import (
    FAMILIES,
    FactorialObservation,
    FitFailure,
    TwoSampleInput,
    manova_two_way,
    pooled_t_test,
    rank_families,
)
from .uncertainty import (
    DEFAULT_ATTENUATION,
    AttenuationEntry,
    DecaySchedule,
    comparator_concentration,
    decay_factor,
    parse_attenuation_csv,
    self_absorption_loss,
)

_BOUNDARY_NOTE = "closed boundary counts exactly touching intervals as a match"
_TABLE3_NOTE = (
    "table3 per-location spreads are standard-deviation scale as printed; "
    "whole-bullet rows are standard errors"
)
_BIAS_SIDE_NOTE = "criterion bias corrections apply to the first specimen of each pair"


def render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _parse_duration(text: str) -> float:
    """Seconds from '30', '24s', '12.7h', '2.70d' or '5m'."""
    units = {"s": 1.0, "m": 60.0, "h": 3600.0, "d": 86400.0}
    text = text.strip()
    factor = 1.0
    if text and text[-1].lower() in units:
        factor = units[text[-1].lower()]
        text = text[:-1]
    try:
        seconds = float(text) * factor
    except ValueError:
        raise ValueError(f"cannot parse duration {text!r}") from None
    if seconds <= 0:
        raise ValueError(f"duration must be > 0, got {seconds}")
    return seconds


def _parse_elements(text: str) -> tuple[Element, ...]:
    return tuple(Element.from_symbol(part.strip()) for part in text.split(",") if part.strip())


def _parse_bias_spec(text: str) -> dict[Element, BiasCorrection]:
    """Parse 'Sb=0.02:0.054,Ag=0.055' into a bias table."""
    table: dict[Element, BiasCorrection] = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ValueError(f"bias entry {item!r} must look like Sb=0.02:0.054")
        symbol, _, spec = item.partition("=")
        element = Element.from_symbol(symbol.strip())
        parts = spec.split(":")
        if len(parts) == 1:
            lo = hi = float(parts[0])
        elif len(parts) == 2:
            lo, hi = float(parts[0]), float(parts[1])
        else:
            raise ValueError(f"bias entry {item!r} must have one or two values")
        table[element] = BiasCorrection(element, lo, hi)
    return table


def _load_config(path: Optional[str]) -> dict:
    if path is None:
        return {}
    config = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(config, dict):
        raise ValueError("config file must hold a JSON object")
    return config


def _bias_from_config(spec: dict) -> dict[Element, BiasCorrection]:
    table = {}
    for symbol, value in spec.items():
        element = Element.from_symbol(symbol)
        if isinstance(value, (int, float)):
            lo = hi = float(value)
        else:
            lo, hi = (float(v) for v in value)
        table[element] = BiasCorrection(element, lo, hi)
    return table


def _build_criterion(args: argparse.Namespace, config: dict) -> MatchCriterion:
    conf = config.get("criterion", {})
    preset_name = args.criterion or conf.get("preset")
    elements = None
    if getattr(args, "elements", None):
        elements = _parse_elements(args.elements)
    elif conf.get("elements"):
        elements = tuple(Element.from_symbol(s) for s in conf["elements"])
    bias = None
    if getattr(args, "bias", None):
        bias = _parse_bias_spec(args.bias)
    elif conf.get("bias"):
        bias = _bias_from_config(conf["bias"])
    if preset_name:
        criterion = criterion_preset(preset_name, elements=elements, bias=bias)
    else:
        criterion = MatchCriterion(
            k=4.0, elements=elements or (Element.SB, Element.AG), bias=bias
        )
    k = args.k if args.k is not None else conf.get("k")
    boundary = args.boundary or conf.get("boundary")
    if k is not None or boundary is not None:
        criterion = MatchCriterion(
            k=float(k) if k is not None else criterion.k,
            elements=criterion.elements,
            bias=criterion.bias,
            boundary=Boundary(boundary) if boundary else criterion.boundary,
        )
    return criterion


def _criterion_dict(criterion: MatchCriterion) -> dict:
    return {
        "k": criterion.k,
        "elements": [e.value for e in criterion.elements],
        "boundary": criterion.boundary.value,
        "bias": None
        if criterion.bias is None
        else {e.value: [c.c_lo, c.c_hi] for e, c in sorted(criterion.bias.items(), key=lambda kv: kv[0].value)},
    }


def _load_dataset(args: argparse.Namespace) -> Dataset:
    if args.fixture and args.input:
        raise ValueError("give either --fixture or --input, not both")
    if args.fixture:
        return fixture(args.fixture)
    if args.input:
        text = Path(args.input).read_text(encoding="utf-8")
        return parse_csv(text, provenance=args.input)
    raise ValueError("an input is required: --fixture NAME or --input PATH")


def _dataset_decisions(dataset: Dataset) -> dict:
    notes = {}
    if dataset.provenance == "fixture:table3":
        notes["table3_semantics"] = _TABLE3_NOTE
    return notes


def _series_dict(series) -> dict:
    return {
        "mean_ppm": series.mean,
        "se_ppm": series.se,
        "df": series.df,
        "n": series.n,
    }


def _add_input_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--fixture", choices=FIXTURE_NAMES, help="embedded table")
    parser.add_argument("--input", help="measurement CSV path")


def _add_criterion_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--criterion", choices=("guinn4", "nrc2"), help="criterion preset")
    parser.add_argument("--k", type=float, help="standard-error multiplier")
    parser.add_argument("--elements", help="element panel, e.g. Sb,Ag")
    parser.add_argument("--boundary", choices=("closed", "open"), help="interval boundary")
    parser.add_argument("--bias", help="bias table, e.g. Sb=0.02:0.054,Ag=0.055")


def _add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--config", help="JSON config path")


# ---------------------------------------------------------------- match


def cmd_match(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    dataset = _load_dataset(args)
    criterion = _build_criterion(args, config)
    ids = sorted(dataset.ids())
    pairs = []
    matched_count = 0
    for i, id_a in enumerate(ids):
        for id_b in ids[i + 1 :]:
            result = match_specimens(dataset.get(id_a), dataset.get(id_b), criterion)
            matched_count += result.matched
            pairs.append(
                {
                    "a": id_a,
                    "b": id_b,
                    "matched": result.matched,
                    "per_element": {
                        e.value: {
                            "matched": per.matched,
                            "overlap": list(per.overlap) if per.overlap else None,
                            "bias_used": list(per.bias_used) if per.bias_used else None,
                        }
                        for e, per in result.per_element.items()
                    },
                }
            )
    payload = {
        "command": "match",
        "dataset": dataset.provenance,
        "criterion": _criterion_dict(criterion),
        "pairs": pairs,
        "pairs_total": len(pairs),
        "pairs_matched": matched_count,
        "decisions": {
            "boundary_note": _BOUNDARY_NOTE,
            "bias_note": _BIAS_SIDE_NOTE,
            **_dataset_decisions(dataset),
        },
    }
    if args.format == "json":
        sys.stdout.write(render_json(payload))
        return 0
    print(f"pairwise matches under k={criterion.k} "
          f"panel={{{','.join(e.value for e in criterion.elements)}}} "
          f"boundary={criterion.boundary.value}")
    for pair in pairs:
        verdict = "match   " if pair["matched"] else "no match"
        detail = "; ".join(
            f"{symbol} {'ok' if per['matched'] else 'fails'}"
            for symbol, per in pair["per_element"].items()
        )
        print(f"  {pair['a']:<16} vs {pair['b']:<16} {verdict} ({detail})")
    print(f"{matched_count} of {len(pairs)} pairs matched")
    return 0


# ---------------------------------------------------------------- group


def cmd_group(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    dataset = _load_dataset(args)
    if not len(dataset):
        raise ValueError("dataset has no specimens")
    criterion = _build_criterion(args, config)
    mode = {"cc": "connected_components", "clique": "maximal_cliques"}[args.mode]
    result = group(dataset, criterion, mode=mode)
    payload = {
        "command": "group",
        "dataset": dataset.provenance,
        "criterion": _criterion_dict(criterion),
        **result.as_dict(),
        "decisions": {
            "boundary_note": _BOUNDARY_NOTE,
            "grouping_note": "groups ordered by smallest member id",
            **_dataset_decisions(dataset),
        },
    }
    if args.format == "json":
        sys.stdout.write(render_json(payload))
        return 0
    print(f"{len(result.groups)} group(s), mode={result.mode}")
    for i, members in enumerate(result.groups, start=1):
        print(f"  group {i}: {', '.join(members)}")
    if result.nontransitive_triples:
        print("nontransitive triples (a-b and b-c match, a-c does not):")
        for a, b, c in result.nontransitive_triples:
            print(f"  {a} - {b} - {c}")
    return 0


# ------------------------------------------------------------- evidence


def cmd_evidence(args: argparse.Namespace) -> int:
    sizes = tuple(int(part) for part in args.box.split(",") if part.strip())
    box = BoxModel(sizes)
    result = likelihood_ratio(box, args.groups_observed, args.draws_t, args.draws_not_t)
    if args.prior_odds is not None:
        try:
            prior = Fraction(args.prior_odds)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse prior odds {args.prior_odds!r}") from None
        result = EvidenceResult(
            p_given_t=result.p_given_t,
            p_given_not_t=result.p_given_not_t,
            likelihood_ratio=result.likelihood_ratio,
            posterior_odds=posterior_odds(result.likelihood_ratio, prior),
        )
    payload = {
        "command": "evidence",
        "box": list(sizes),
        "draws_t": args.draws_t,
        "draws_not_t": args.draws_not_t,
        "groups_observed": args.groups_observed,
        **result.as_dict(),
        "decisions": {
            "model_note": "uniform draws without replacement; no measurement error "
            "or heterogeneity enters this calculation",
        },
    }
    if args.format == "json":
        sys.stdout.write(render_json(payload))
        return 0
    print(f"box groups {sizes}, evidence: >= {args.groups_observed} group(s) spanned")
    print(f"  P(E | {args.draws_t} bullets)  = {result.p_given_t} = {float(result.p_given_t):.6f}")
    print(f"  P(E | {args.draws_not_t} bullets)  = {result.p_given_not_t} = {float(result.p_given_not_t):.6f}")
    print(f"  likelihood ratio = {result.likelihood_ratio} = {float(result.likelihood_ratio):.6f}")
    if result.posterior_odds is not None:
        print(f"  posterior odds   = {result.posterior_odds} = {float(result.posterior_odds):.6f}")
    return 0


# --------------------------------------------------------------- hetero


def _pick_by_location(dataset: Dataset, element: Element, token: str):
    location = next((loc for loc in Location if loc.value == token), None)
    if location is None:
        raise ValueError(f"unknown location {token!r}")
    hits = [s for s in dataset if s.location is location and element in s.series]
    if not hits:
        raise ValueError(f"no specimen at location {token!r} carrying {element.value}")
    if len(hits) > 1:
        raise ValueError(
            f"location {token!r} is ambiguous ({', '.join(s.id for s in hits)}); use --ids"
        )
    return hits[0]


def _hetero_ttest(args: argparse.Namespace, dataset: Dataset) -> dict:
    element = Element.from_symbol(args.element)
    if args.ids:
        tokens = [t.strip() for t in args.ids.split(",") if t.strip()]
        if len(tokens) != 2:
            raise ValueError("--ids needs exactly two specimen ids")
        specimens = [dataset.get(t) for t in tokens]
        for s in specimens:
            if element not in s.series:
                raise ValueError(f"specimen {s.id!r} has no {element.value} series")
    elif args.locations:
        tokens = [t.strip() for t in args.locations.split(",") if t.strip()]
        if len(tokens) != 2:
            raise ValueError("--locations needs exactly two locations")
        specimens = [_pick_by_location(dataset, element, t) for t in tokens]
    else:
        raise ValueError("give --locations a,b or --ids id1,id2")
    sides = []
    for s in specimens:
        series = s.series[element]
        if series.df is None:
            raise ValueError(
                f"specimen {s.id!r} {element.value} is a single-count series; "
                "the pooled t-test needs replicate-based sides"
            )
        sides.append(TwoSampleInput(series.mean, series.se, series.n, label=s.id))
    result = pooled_t_test(sides[0], sides[1])
    return {
        "command": "hetero",
        "test": "pooled_t_test",
        "element": element.value,
        "samples": [
            {"id": side.label, "mean_ppm": side.mean, "se_ppm": side.se, "n": side.n}
            for side in sides
        ],
        "t": result.t,
        "df": result.df,
        "p_two_sided": result.p_two_sided,
        "decisions": {"se_to_sd": "sample sd recovered as se * sqrt(n)"},
    }


def _hetero_manova(args: argparse.Namespace) -> dict:
    if not args.input:
        raise ValueError("--manova needs --input with raw replicate rows")
    if not args.responses:
        raise ValueError("--manova needs --responses, e.g. Ag,As")
    elements = _parse_elements(args.responses)
    if not elements:
        raise ValueError("--responses must name at least one element")
    rows = parse_rows(Path(args.input).read_text(encoding="utf-8"))
    cells: dict[tuple[str, str], dict[Element, list[float]]] = {}
    for row in rows:
        if row.basis is not Basis.REPLICATE_MEMBER or row.element not in elements:
            continue
        if row.location is Location.UNLABELED:
            continue
        key = (row.specimen_id, row.location.value)
        cells.setdefault(key, {e: [] for e in elements})[row.element].append(row.value)
    observations = []
    for (bullet, location), by_element in sorted(cells.items()):
        counts = {e: len(v) for e, v in by_element.items()}
        if len(set(counts.values())) != 1:
            raise ValueError(
                f"cell ({bullet}, {location}) has unequal replicate counts per element: {counts}"
            )
        for i in range(counts[elements[0]]):
            responses = tuple(math.log(by_element[e][i]) for e in elements)
            observations.append(
                FactorialObservation(bullet=bullet, location=location, responses=responses)
            )
    tests = manova_two_way(observations)
    return {
        "command": "hetero",
        "test": "manova_two_way",
        "responses": [e.value for e in elements],
        "n_observations": len(observations),
        "effects": {name: test.as_dict() for name, test in tests.items()},
        "decisions": {
            "log_note": "responses are natural-log concentrations",
            "pairing_note": "replicates pair by row order within each (bullet, location) cell; "
            "unlabeled rows are excluded",
        },
    }


def cmd_hetero(args: argparse.Namespace) -> int:
    if args.manova:
        payload = _hetero_manova(args)
    else:
        dataset = _load_dataset(args)
        if not args.element:
            raise ValueError("--element is required for the t-test")
        payload = _hetero_ttest(args, dataset)
        payload["dataset"] = dataset.provenance
        payload["decisions"].update(_dataset_decisions(dataset))
    if args.format == "json":
        sys.stdout.write(render_json(payload))
        return 0
    if payload["test"] == "pooled_t_test":
        for side in payload["samples"]:
            print(f"  {side['id']:<18} {side['mean_ppm']} +/- {side['se_ppm']} (n={side['n']})")
        print(f"t = {payload['t']:.4f}, df = {payload['df']}, two-sided p = {payload['p_two_sided']:.4f}")
    else:
        for name, effect in payload["effects"].items():
            print(
                f"  {name:<12} Wilks={effect['wilks_lambda']:.4f} "
                f"F={effect['wilks_f']:.3f} p={effect['wilks_p']:.4f} | "
                f"Hotelling-Lawley={effect['hotelling_lawley']:.4f} p={effect['hl_p']:.4f}"
            )
    return 0


# -------------------------------------------------------------- distfit


def _read_values(path: str) -> list[float]:
    values = []
    for i, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        for part in line.replace(",", " ").split():
            try:
                values.append(float(part))
            except ValueError:
                raise ValueError(f"{path}:{i}: not a number: {part!r}") from None
    return values


def cmd_distfit(args: argparse.Namespace) -> int:
    values = _read_values(args.input)
    if args.families in (None, "all"):
        families: Sequence[str] = FAMILIES
    else:
        families = tuple(f.strip() for f in args.families.split(",") if f.strip())
        unknown = [f for f in families if f not in FAMILIES]
        if unknown:
            raise ValueError(f"unknown families {unknown}; have {', '.join(FAMILIES)}")
    entries = rank_families(values, families)
    payload = {
        "command": "distfit",
        "input": args.input,
        "n": len(values),
        "ranking": [e.as_dict() for e in entries],
        "decisions": {
            "gof_note": "chi-squared on max(5, n//5) equal-probability bins; "
            "df = bins - 1 - #params",
        },
    }
    if args.format == "json":
        sys.stdout.write(render_json(payload))
        return 0
    print(f"{len(values)} values; families ranked by goodness-of-fit p")
    for entry in entries:
        if isinstance(entry, FitFailure):
            print(f"  {entry.family:<12} FAILED: {entry.error}")
        else:
            params = ", ".join(f"{k}={v:.6g}" for k, v in sorted(entry.params.items()))
            print(
                f"  {entry.family:<12} p={entry.p_value:.4f} "
                f"stat={entry.gof_stat:.3f} df={entry.gof_df} ({params})"
            )
    return 0


# ------------------------------------------------------------------ naa


def _schedule_from(args: argparse.Namespace, prefix: str = "") -> DecaySchedule:
    def pick(name: str) -> str:
        value = getattr(args, prefix + name, None)
        if value is None:
            value = getattr(args, name, None)
        if value is None:
            raise ValueError(f"missing --{(prefix + name).replace('_', '-')}")
        return value

    return DecaySchedule(
        half_life=_parse_duration(pick("half_life")),
        t_irradiate=_parse_duration(pick("ti")),
        t_decay=_parse_duration(pick("td")),
        t_count=_parse_duration(pick("tc")),
    )


def _attenuation_entries(args: argparse.Namespace, config: dict) -> tuple[AttenuationEntry, ...]:
    if getattr(args, "table", None):
        return parse_attenuation_csv(Path(args.table).read_text(encoding="utf-8"))
    if config.get("attenuation"):
        return tuple(
            AttenuationEntry(float(e["energy_kev"]), float(e["mu_linear_per_cm"]))
            for e in config["attenuation"]
        )
    return DEFAULT_ATTENUATION


def cmd_naa(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    if args.naa_command == "decay":
        schedule = _schedule_from(args)
        payload = {
            "command": "naa decay",
            "schedule": {
                "half_life_s": schedule.half_life,
                "t_irradiate_s": schedule.t_irradiate,
                "t_decay_s": schedule.t_decay,
                "t_count_s": schedule.t_count,
            },
            "decay_factor_s": decay_factor(schedule),
            "decisions": {
                "formula": "(1-exp(-lam*Ti)) * exp(-lam*Td) * (1-exp(-lam*Tc)) / lam"
            },
        }
        text = f"decay factor = {payload['decay_factor_s']:.4f} s"
    elif args.naa_command == "conc":
        sample_schedule = _schedule_from(args)
        std_schedule = _schedule_from(args, prefix="std_")
        ppm = comparator_concentration(
            sample_counts=args.sample_counts,
            sample_mass_mg=args.sample_mass_mg,
            std_counts=args.std_counts,
            std_mass_ug=args.std_mass_ug,
            sample_schedule=sample_schedule,
            std_schedule=std_schedule,
        )
        payload = {
            "command": "naa conc",
            "concentration_ppm": ppm,
            "decisions": {
                "comparator_note": "decay-factor normalized count ratio times the "
                "standard-to-sample mass ratio; shared flux cancels"
            },
        }
        text = f"concentration = {ppm:.6g} ppm"
    else:  # selfabs
        entries = _attenuation_entries(args, config)
        if args.energies and args.energies != "all":
            wanted = {float(t) for t in args.energies.split(",") if t.strip()}
            entries = tuple(e for e in entries if e.energy_kev in wanted)
            missing = wanted - {e.energy_kev for e in entries}
            if missing:
                raise ValueError(f"energies {sorted(missing)} not in the attenuation table")
        if not entries:
            raise ValueError("no attenuation entries selected")
        losses = {
            e.energy_kev: self_absorption_loss(args.dimension_mm, e) for e in entries
        }
        average = sum(losses.values()) / len(losses)
        payload = {
            "command": "naa selfabs",
            "dimension_mm": args.dimension_mm,
            "losses": {f"{kev:g}": loss for kev, loss in sorted(losses.items())},
            "average_loss": average,
            "decisions": {
                "path_note": "effective absorption path is half the mean maximum dimension",
                "table_note": "default table: Hubbell & Seltzer lead mass attenuation "
                "(log-log interpolated) times density 11.35 g/cm^3",
            },
        }
        lines = [
            f"  {kev:>6g} keV: loss {loss * 100:.3f}%" for kev, loss in sorted(losses.items())
        ]
        text = "\n".join(lines + [f"  average: {average * 100:.3f}%"])
    if args.format == "json":
        sys.stdout.write(render_json(payload))
    else:
        print(text)
    return 0


# --------------------------------------------------------------- report


def cmd_report(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    dataset = _load_dataset(args)
    if not len(dataset):
        raise ValueError("dataset has no specimens")
    criterion = _build_criterion(args, config)
    grouping = group(dataset, criterion)
    rate = within_box_match_rate(dataset, criterion)
    specimens = [
        {
            "id": s.id,
            "kind": s.kind.value,
            "lot": s.lot,
            "location": s.location.value if s.location else None,
            "series": {e.value: _series_dict(series) for e, series in s.series.items()},
        }
        for s in dataset
    ]
    payload = {
        "command": "report",
        "dataset": dataset.provenance,
        "criterion": _criterion_dict(criterion),
        "specimens": specimens,
        "grouping": grouping.as_dict(),
        "within_lot": {
            "pairs_total": rate.pairs_total,
            "pairs_matched": rate.pairs_matched,
            "rate": rate.rate,
        },
        "decisions": {
            "boundary_note": _BOUNDARY_NOTE,
            "bias_note": _BIAS_SIDE_NOTE,
            **_dataset_decisions(dataset),
        },
    }
    if args.format == "json":
        sys.stdout.write(render_json(payload))
        return 0
    print(f"dataset: {dataset.provenance} ({len(dataset)} specimens)")
    for s in specimens:
        parts = ", ".join(
            f"{symbol} {d['mean_ppm']:g} +/- {d['se_ppm']:g}"
            for symbol, d in s["series"].items()
        )
        lot = f" lot {s['lot']}" if s["lot"] else ""
        print(f"  {s['id']:<18} {s['kind']}{lot}: {parts}")
    print(f"groups under k={criterion.k}:")
    for i, members in enumerate(grouping.groups, start=1):
        print(f"  group {i}: {', '.join(members)}")
    if rate.pairs_total:
        print(
            f"within-lot pairs matched: {rate.pairs_matched}/{rate.pairs_total} "
            f"(rate {rate.rate:.3f})"
        )
    return 0


# ------------------------------------------------------------------ main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cabl",
        description="Comparative bullet lead analysis: matching, grouping, "
        "evidence and measurement reduction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_match = sub.add_parser("match", help="pairwise indistinguishability decisions")
    _add_input_options(p_match)
    _add_criterion_options(p_match)
    _add_common_options(p_match)
    p_match.set_defaults(func=cmd_match)

    p_group = sub.add_parser("group", help="compositional grouping")
    _add_input_options(p_group)
    _add_criterion_options(p_group)
    p_group.add_argument("--mode", choices=("cc", "clique"), default="cc")
    _add_common_options(p_group)
    p_group.set_defaults(func=cmd_group)

    p_ev = sub.add_parser("evidence", help="hypergeometric likelihood ratio")
    p_ev.add_argument("--box", required=True, help="group sizes, e.g. 6,4")
    p_ev.add_argument("--draws-t", type=int, required=True, help="bullets under T")
    p_ev.add_argument("--draws-not-t", type=int, required=True, help="bullets under not-T")
    p_ev.add_argument("--groups-observed", type=int, required=True)
    p_ev.add_argument("--prior-odds", help="prior odds, e.g. 1.0 or 2/3")
    _add_common_options(p_ev)
    p_ev.set_defaults(func=cmd_evidence)

    p_het = sub.add_parser("hetero", help="heterogeneity tests")
    _add_input_options(p_het)
    p_het.add_argument("--element", help="element for the pooled t-test")
    p_het.add_argument("--locations", help="two locations, e.g. outer,middle")
    p_het.add_argument("--ids", help="two specimen ids")
    p_het.add_argument("--manova", action="store_true", help="two-way MANOVA on raw rows")
    p_het.add_argument("--responses", help="MANOVA response elements, e.g. Ag,As")
    _add_common_options(p_het)
    p_het.set_defaults(func=cmd_hetero)

    p_fit = sub.add_parser("distfit", help="distribution fitting and ranking")
    p_fit.add_argument("--input", required=True, help="file with one value per line")
    p_fit.add_argument("--families", help="'all' or a comma list")
    _add_common_options(p_fit)
    p_fit.set_defaults(func=cmd_distfit)

    p_naa = sub.add_parser("naa", help="activation-analysis reduction")
    naa_sub = p_naa.add_subparsers(dest="naa_command", required=True)
    p_decay = naa_sub.add_parser("decay", help="activate-decay-count factor")
    for flag in ("--half-life", "--ti", "--td", "--tc"):
        p_decay.add_argument(flag, required=True)
    _add_common_options(p_decay)
    p_conc = naa_sub.add_parser("conc", help="comparator-standard concentration")
    p_conc.add_argument("--sample-counts", type=float, required=True)
    p_conc.add_argument("--sample-mass-mg", type=float, required=True)
    p_conc.add_argument("--std-counts", type=float, required=True)
    p_conc.add_argument("--std-mass-ug", type=float, required=True)
    for flag in ("--half-life", "--ti", "--td", "--tc"):
        p_conc.add_argument(flag, required=True)
    for flag in ("--std-half-life", "--std-ti", "--std-td", "--std-tc"):
        p_conc.add_argument(flag, help="standard's schedule; defaults to the sample's")
    _add_common_options(p_conc)
    p_self = naa_sub.add_parser("selfabs", help="gamma self-absorption loss")
    p_self.add_argument("--dimension-mm", type=float, required=True)
    p_self.add_argument("--energies", help="'all' or comma list of keV in the table")
    p_self.add_argument("--table", help="attenuation CSV (energy_kev,mu_linear_per_cm)")
    _add_common_options(p_self)
    p_naa.set_defaults(func=cmd_naa)

    p_rep = sub.add_parser("report", help="full pipeline report")
    _add_input_options(p_rep)
    _add_criterion_options(p_rep)
    _add_common_options(p_rep)
    p_rep.set_defaults(func=cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CablError, ValueError, KeyError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
