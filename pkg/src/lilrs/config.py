"""Experiment manifests: a small key/value format with nested blocks.

Example::

    code {
      q = 3
      m = 3
      shots = 2
      interleaving = 3
      shot_dims = 3 3
      k = 3
    }
    channel {
      gamma = 2 3 4 5 6
      delta = 1
    }
    trials = 10000
    seed = 42
    decoder = unique

Flag overrides beat file values; see cli.py.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .code import CodeSpec

__all__ = ["ConfigError", "parse_config_text", "ExperimentConfig"]


class ConfigError(ValueError):
    pass


def _parse_token(tok: str):
    try:
        return int(tok)
    except ValueError:
        return tok


def parse_config_text(text: str) -> dict:
    """Nested dict from the block format; values are ints, strings, or lists thereof."""
    root: dict = {}
    stack = [root]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.endswith("{"):
            name = line[:-1].strip()
            if not name:
                raise ConfigError(f"line {lineno}: unnamed block")
            block: dict = {}
            stack[-1][name] = block
            stack.append(block)
        elif line == "}":
            if len(stack) == 1:
                raise ConfigError(f"line {lineno}: unmatched '}}'")
            stack.pop()
        elif "=" in line:
            key, _, value = line.partition("=")
            toks = value.split()
            if not toks:
                raise ConfigError(f"line {lineno}: empty value for {key.strip()!r}")
            parsed = [_parse_token(t) for t in toks]
            stack[-1][key.strip()] = parsed[0] if len(parsed) == 1 else parsed
        else:
            raise ConfigError(f"line {lineno}: cannot parse {raw!r}")
    if len(stack) != 1:
        raise ConfigError("unclosed block")
    return root


def _as_list(v):
    if v is None:
        return None
    return list(v) if isinstance(v, list) else [v]


@dataclass
class ExperimentConfig:
    code_args: dict
    gammas: list[int] = dc_field(default_factory=lambda: [0])
    deltas: list[int] = dc_field(default_factory=lambda: [0])
    trials: int = 100
    seed: int = 0
    decoder: str = "unique"
    workers: int = 1
    out: str | None = None
    dump_failures: str | None = None
    stop_after_failures: int | None = None
    codebook_cap: int = 10_000

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.decoder not in ("unique", "lo", "list", "complementary"):
            raise ConfigError(f"unknown decoder {self.decoder!r}")

    @classmethod
    def from_dict(cls, data: dict, overrides: dict | None = None) -> "ExperimentConfig":
        overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
        code = dict(data.get("code", {}))
        if not code:
            raise ConfigError("missing 'code' block")
        channel = dict(data.get("channel", {}))
        code_args = {
            "q": code.get("q"),
            "m": code.get("m"),
            "r": code.get("r", 1),
            "shots": code.get("shots"),
            "interleaving": code.get("interleaving", 1),
            "shot_dims": tuple(_as_list(code.get("shot_dims"))) if "shot_dims" in code else None,
            "k": code.get("k"),
            "modulus": tuple(_as_list(code.get("modulus"))) if "modulus" in code else None,
        }
        for key in ("q", "m", "shots", "k"):
            if code_args.get(key) is None:
                raise ConfigError(f"code block is missing {key!r}")
        if code_args["shot_dims"] is None:
            raise ConfigError("code block is missing 'shot_dims'")
        gammas = _as_list(overrides.get("gamma", channel.get("gamma", 0)))
        deltas = _as_list(overrides.get("delta", channel.get("delta", 0)))
        return cls(
            code_args=code_args,
            gammas=gammas,
            deltas=deltas,
            trials=overrides.get("trials", data.get("trials", 100)),
            seed=overrides.get("seed", data.get("seed", 0)),
            decoder=overrides.get("decoder", data.get("decoder", "unique")),
            workers=overrides.get("workers", data.get("workers", 1)),
            out=overrides.get("out", data.get("out")),
            dump_failures=overrides.get("dump_failures", data.get("dump_failures")),
            stop_after_failures=overrides.get(
                "stop_after_failures", data.get("stop_after_failures")
            ),
            codebook_cap=overrides.get("codebook_cap", data.get("codebook_cap", 10_000)),
        )

    @classmethod
    def from_file(cls, path: str, overrides: dict | None = None) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(parse_config_text(fh.read()), overrides)

    def build_spec(self) -> CodeSpec:
        args = {k: v for k, v in self.code_args.items() if v is not None or k == "modulus"}
        return CodeSpec.standard(**args)

    def sweep(self):
        for delta in self.deltas:
            for gamma in self.gammas:
                yield gamma, delta
