"""Command-line front end: CSV in, JSON or CSV out.

Exit codes: 0 success, 2 input/configuration error, 3 numeric/domain error
(an infinite value where finiteness is required, or a transform domain
violation). Set INEQLAB_LOG=debug|info|off to control logging.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import os
import sys
from functools import wraps

import click

from .decomposition import atkinson_decompose, decompose, subgroup_decompose
from .errors import (
    IneqError,
    InfiniteMeasure,
    InvalidMeasure,
    TransformDomainError,
)
from .measures import MeasureSpec, atkinson, ge, inequality, parse_measure
from .population import Dataset, group_by, grouped_columns, population_matrix
from .shapley import game_synergy, shapley_values
from .zonogon import canonical_chain

log = logging.getLogger("ineqlab")

EXIT_INPUT = 2
EXIT_NUMERIC = 3


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


def _setup_logging() -> None:
    level = os.environ.get("INEQLAB_LOG", "off").lower()
    if level == "off":
        logging.disable(logging.CRITICAL)
        return
    logging.basicConfig(
        level=logging.DEBUG if level == "debug" else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )


def ingest(path: str, value_col: str) -> Dataset:
    """Read a UTF-8 CSV with a header row into a Dataset.

    Every column other than the value column becomes an attribute.
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise InputError("empty dataset") from None
            if value_col not in header:
                raise InputError(f"missing value column {value_col!r}")
            vi = header.index(value_col)
            attr_names = [h for h in header if h != value_col]
            attr_idx = {a: header.index(a) for a in attr_names}
            values = []
            attrs: dict[str, list[str]] = {a: [] for a in attr_names}
            for lineno, row in enumerate(reader, start=2):
                if not row or all(not cell.strip() for cell in row):
                    continue
                if len(row) != len(header):
                    raise InputError(
                        f"line {lineno}: expected {len(header)} fields, got {len(row)}"
                    )
                try:
                    v = float(row[vi])
                except ValueError:
                    raise InputError(
                        f"line {lineno}: cannot parse value {row[vi]!r}"
                    ) from None
                if not math.isfinite(v) or v < 0:
                    raise InputError(
                        f"line {lineno}: value must be non-negative and finite"
                    )
                values.append(v)
                for a in attr_names:
                    cell = row[attr_idx[a]]
                    if cell == "":
                        raise InputError(
                            f"line {lineno}: missing category for attribute {a!r}"
                        )
                    attrs[a].append(cell)
    except OSError as exc:
        raise InputError(str(exc)) from exc
    if not values:
        raise InputError("empty dataset")
    try:
        return Dataset(values, attrs, attr_names)
    except IneqError as exc:
        raise InputError(str(exc)) from exc


def _round(value: float, precision: int):
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return round(value + 0.0, precision)


def _emit(payload: dict, fmt: str, precision: int) -> None:
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2))
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["key", "value"])
        for key, value in _flatten(payload):
            writer.writerow([key, value])


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}.{i}" if prefix else str(i))
    else:
        yield prefix, obj


def _numeric_errors(fn):
    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (InfiniteMeasure, TransformDomainError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_NUMERIC)
        except IneqError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)

    return wrapper


input_opt = click.option("--input", "-i", "path", required=True, help="input CSV file")
value_opt = click.option("--value-col", required=True, help="name of the indicator column")
measure_opt = click.option("--measure", "measure_str", default="theil", show_default=True)
format_opt = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True
)
precision_opt = click.option("--precision", type=int, default=6, show_default=True)


@click.group()
def main() -> None:
    """Inequality measures and attribute decompositions."""
    _setup_logging()


@main.command("measure")
@input_opt
@value_opt
@measure_opt
@format_opt
@precision_opt
@_numeric_errors
def cmd_measure(path, value_col, measure_str, fmt, precision):
    """Compute one inequality measure over the whole population."""
    pop = ingest(path, value_col)
    kind, parsed = parse_measure(measure_str)
    if kind == "atkinson":
        value = atkinson(pop, parsed)
    else:
        value = inequality(population_matrix(pop), parsed)
    log.info("measure %s = %s", measure_str, value)
    _emit({"measure": measure_str, "value": _round(value, precision)}, fmt, precision)


@main.command("lorenz")
@input_opt
@value_opt
@click.option("--group-by", "group_attrs", default=None, help="comma-separated attributes")
@precision_opt
@_numeric_errors
def cmd_lorenz(path, value_col, group_attrs, precision):
    """Emit the canonical chain vertices as x,y CSV."""
    pop = ingest(path, value_col)
    if group_attrs:
        cols = grouped_columns(pop, [a.strip() for a in group_attrs.split(",")])
    else:
        cols = population_matrix(pop)
    chain = canonical_chain(cols)
    click.echo("x,y")
    for x, y in chain.vertices:
        click.echo(f"{x:.{precision}g},{y:.{precision}g}")


@main.command("decompose")
@input_opt
@value_opt
@measure_opt
@click.option("--attrs", "attrs_str", required=True, help="2 or 3 comma-separated attributes")
@format_opt
@precision_opt
@_numeric_errors
def cmd_decompose(path, value_col, measure_str, attrs_str, fmt, precision):
    """Redundant/unique/synergetic decomposition over the attribute lattice."""
    pop = ingest(path, value_col)
    attrs = [a.strip() for a in attrs_str.split(",")]
    kind, parsed = parse_measure(measure_str)
    if kind == "atkinson":
        result = atkinson_decompose(pop, attrs, parsed)
    else:
        result = decompose(pop, attrs, parsed)
    payload = {
        "measure": measure_str,
        "attributes": attrs,
        "total": _round(result.total, precision),
    }
    if len(attrs) == 2:
        named = result.named(attrs[0], attrs[1])
        payload["components"] = {
            "redundant": _round(named["redundant"], precision),
            "unique": {
                attrs[0]: _round(named[f"unique_{attrs[0]}"], precision),
                attrs[1]: _round(named[f"unique_{attrs[1]}"], precision),
            },
            "synergy": _round(named["synergetic"], precision),
        }
    payload["lattice"] = [
        {
            "node": node.label(),
            "cumulative": _round(cum, precision),
            "partial": _round(part, precision),
        }
        for node, cum, part in result.nodes
    ]
    _emit(payload, fmt, precision)


@main.command("shapley")
@input_opt
@value_opt
@measure_opt
@click.option("--attrs", "attrs_str", required=True, help="comma-separated attributes")
@format_opt
@precision_opt
@_numeric_errors
def cmd_shapley(path, value_col, measure_str, attrs_str, fmt, precision):
    """Exact Shapley values of the grouped-inequality game."""
    pop = ingest(path, value_col)
    attrs = [a.strip() for a in attrs_str.split(",")]
    kind, parsed = parse_measure(measure_str)
    if kind == "atkinson":
        raise InvalidMeasure("shapley requires an f-inequality measure")
    phi = shapley_values(pop, attrs, parsed)
    interactions = {
        f"{a}|{b}": _round(game_synergy(pop, a, b, parsed), precision)
        for a, b in _pairs(attrs)
    }
    payload = {
        "values": {a: _round(v, precision) for a, v in phi.items()},
        "efficiency_check": _round(sum(phi.values()), precision),
        "interactions": interactions,
    }
    _emit(payload, fmt, precision)


@main.command("subgroup")
@input_opt
@value_opt
@measure_opt
@click.option("--group-by", "group_attr", required=True, help="single grouping attribute")
@format_opt
@precision_opt
@_numeric_errors
def cmd_subgroup(path, value_col, measure_str, group_attr, fmt, precision):
    """Classical GE between/within subgroup decomposition."""
    pop = ingest(path, value_col)
    kind, parsed = parse_measure(measure_str)
    if kind == "atkinson":
        raise InvalidMeasure("subgroup decomposition is defined for the GE family")
    c = _ge_parameter(parsed)
    result = subgroup_decompose(pop, group_attr, c)
    payload = {
        "between": _round(result.between, precision),
        "within": [
            {
                "group": "|".join(key),
                "weight": _round(w, precision),
                "value": _round(v, precision),
            }
            for key, w, v in result.within
        ],
        "reconstruction": _round(result.reconstruction, precision),
        "total": _round(result.total, precision),
    }
    _emit(payload, fmt, precision)


def _ge_parameter(spec: MeasureSpec) -> float:
    if spec.p != 0:
        raise InvalidMeasure("subgroup decomposition requires p = 0")
    name = spec.f.name
    if name == "theil":
        return 1.0
    if name == "mld":
        return 0.0
    if name.startswith("ge:"):
        return float(name.split(":", 1)[1])
    raise InvalidMeasure("subgroup decomposition is defined for the GE family")


def _pairs(attrs):
    for i, a in enumerate(attrs):
        for b in attrs[i + 1 :]:
            yield a, b


if __name__ == "__main__":
    main()
