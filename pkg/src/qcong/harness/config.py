"""Sweep configuration: a flat ``key = value`` text format.

Example::

    # odd-power sums, single-argument case
    family = thm1
    m = 1
    n = 1..3          # each tuple entry ranges over 1..3
    j = 0..m          # endpoints may use earlier parameters
    r = 0, 1
    variants = plus, minus
    output = thm1.jsonl

Reserved keys are listed in ``RESERVED``; every other key is a family
parameter. Values are a single value, an inclusive range ``lo..hi`` or a
comma list. Range endpoints are integer expressions over earlier
parameters with ``+ - * //`` and the functions ``sum``, ``len``, ``min``,
``max``.
"""

from __future__ import annotations

import ast
import itertools
import operator
import os
from dataclasses import dataclass, field

from qcong.families.registry import get_family

__all__ = ["SweepConfig", "ConfigError", "parse_config", "load_config", "RESERVED"]

SCHEMA = "qcong.config/1"
RESERVED = ("family", "variants", "strategy", "workers", "output", "resume", "conjectural",
            "stop_on_counterexample")
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


class ConfigError(ValueError):
    pass


@dataclass
class SweepConfig:
    family: str
    ranges: dict  # parameter -> raw value text, in file order
    variants: tuple = ()
    strategy: str = "both"
    workers: int | None = None
    output: str | None = None
    resume: bool = False
    conjectural: bool = False
    stop_on_counterexample: bool = True
    extra: dict = field(default_factory=dict)

    def to_text(self) -> str:
        """Serialise back to the config format; ``parse_config`` inverts it."""
        lines = [f"family = {self.family}"]
        lines += [f"{k} = {v}" for k, v in self.ranges.items()]
        if self.variants:
            lines.append(f"variants = {', '.join(self.variants)}")
        lines.append(f"strategy = {self.strategy}")
        if self.workers is not None:
            lines.append(f"workers = {self.workers}")
        if self.output is not None:
            lines.append(f"output = {self.output}")
        lines.append(f"resume = {str(self.resume).lower()}")
        lines.append(f"conjectural = {str(self.conjectural).lower()}")
        lines.append(f"stop_on_counterexample = {str(self.stop_on_counterexample).lower()}")
        return "\n".join(lines) + "\n"

    def effective_workers(self) -> int:
        env = os.environ.get("QCONG_WORKERS")
        if env:
            return max(1, int(env))
        if self.workers:
            return max(1, self.workers)
        return os.cpu_count() or 1

    def tasks(self):
        """Yield ``(params, variant)`` in deterministic lattice order."""
        fam = get_family(self.family)
        variants = self.variants or fam.variants
        for bad in set(variants) - set(fam.variants):
            raise ConfigError(f"{self.family} has no variant {bad!r}")
        unknown = set(self.ranges) - set(fam.param_names)
        if unknown:
            raise ConfigError(f"{self.family} does not take {sorted(unknown)}")
        order = [p for p in fam.params if p.name in self.ranges]
        for params in _lattice(order, self.ranges, {}):
            for v in variants:
                yield dict(params), v


def _bool(key: str, text: str) -> bool:
    low = text.strip().lower()
    if low in _TRUE:
        return True
    if low in _FALSE:
        return False
    raise ConfigError(f"{key} must be a boolean, got {text!r}")


def parse_config(text: str) -> SweepConfig:
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key or not value:
            raise ConfigError(f"line {lineno}: empty key or value")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    if "family" not in values:
        raise ConfigError("config needs a 'family' key")
    family = values.pop("family")
    get_family(family)
    cfg = SweepConfig(family=family, ranges={})
    for key, value in values.items():
        if key == "variants":
            cfg.variants = tuple(v.strip() for v in value.split(",") if v.strip())
        elif key == "strategy":
            cfg.strategy = value
        elif key == "workers":
            cfg.workers = int(value)
        elif key == "output":
            cfg.output = value
        elif key in ("resume", "conjectural", "stop_on_counterexample"):
            setattr(cfg, key, _bool(key, value))
        else:
            cfg.ranges[key] = value
    return cfg


def load_config(path: str) -> SweepConfig:
    with open(path, encoding="utf-8") as fh:
        cfg = parse_config(fh.read())
    if cfg.output is not None and not os.path.isabs(cfg.output):
        cfg.output = os.path.join(os.path.dirname(os.path.abspath(path)), cfg.output)
    return cfg


# ---------------------------------------------------------------------------
# value expressions
# ---------------------------------------------------------------------------

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
}
_FUNCS = {"sum": sum, "len": len, "min": min, "max": max}


def _eval(node, env: dict):
    if isinstance(node, ast.Expression):
        return _eval(node.body, env)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise ConfigError(f"unknown name {node.id!r} in expression")
        return env[node.id]
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left, env), _eval(node.right, env))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_eval(node.operand, env)
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
        return _FUNCS[node.func.id](_eval(node.args[0], env))
    raise ConfigError(f"unsupported expression: {ast.dump(node)}")


def evaluate(expr: str, env: dict) -> int:
    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError as exc:
        raise ConfigError(f"bad expression {expr!r}") from exc
    value = _eval(tree, env)
    if not isinstance(value, int):
        raise ConfigError(f"expression {expr!r} is not an integer")
    return value


def expand_values(text: str, env: dict) -> list:
    """The list of values denoted by ``text`` under ``env``."""
    out = []
    for part in _split_top(text):
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(evaluate(lo, env), evaluate(hi, env) + 1))
        elif part and part[0].isalpha() and not _is_expr(part, env):
            out.append(part)
        else:
            out.append(evaluate(part, env))
    return out


def _is_expr(part: str, env: dict) -> bool:
    try:
        evaluate(part, env)
    except ConfigError:
        return False
    return True


def _split_top(text: str) -> list:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur).strip())
    return [p for p in parts if p]


def _lattice(order: list, ranges: dict, env: dict):
    if not order:
        yield dict(env)
        return
    p, rest = order[0], order[1:]
    values = expand_values(ranges[p.name], env)
    if p.type == "tuple":
        size = env.get(p.length) if p.length else None
        if size is None:
            raise ConfigError(f"{p.name} needs {p.length} to be set before it")
        choices = [tuple(c) for c in itertools.product(values, repeat=size)]
    else:
        choices = values
    for choice in choices:
        env[p.name] = choice
        yield from _lattice(rest, ranges, env)
    env.pop(p.name, None)
