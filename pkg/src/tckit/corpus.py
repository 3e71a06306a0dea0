"""Curve corpus files.

One record per line::

    label:a1,a2,a3,a4,a6 [key=value ...]

Blank lines and lines starting with ``#`` are ignored. Optional keys are
``non_cm`` (1/0, true/false), ``N`` (conductor) and ``alpha.P`` (an override
for the stabilization exponent at the prime P).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .curve import WeierstrassCurve, invariants
from .errors import CorpusFormatError

_TRUE = {"1", "true", "yes"}
_FALSE = {"0", "false", "no"}


@dataclass
class CurveRecord:
    label: str
    ainvs: tuple[int, int, int, int, int]
    conductor: int | None = None
    non_cm: bool | None = None
    alpha_overrides: dict[int, int] = field(default_factory=dict)

    def curve(self) -> WeierstrassCurve:
        return invariants(*self.ainvs)


def parse_ainvs(text: str) -> tuple[int, int, int, int, int]:
    parts = [s.strip() for s in text.strip().strip("[]").split(",")]
    if len(parts) != 5:
        raise CorpusFormatError(f"expected five coefficients, got {text!r}")
    try:
        return tuple(int(s) for s in parts)  # type: ignore[return-value]
    except ValueError:
        raise CorpusFormatError(f"coefficients must be integers: {text!r}") from None


def parse_line(line: str) -> CurveRecord:
    head, *extras = line.split()
    label, sep, coeffs = head.partition(":")
    if not sep or not label or not label.isascii():
        raise CorpusFormatError(f"expected 'label:a1,a2,a3,a4,a6', got {line!r}")
    record = CurveRecord(label, parse_ainvs(coeffs))
    for item in extras:
        key, sep, value = item.partition("=")
        if not sep:
            raise CorpusFormatError(f"expected key=value, got {item!r}")
        try:
            if key == "non_cm":
                if value.lower() in _TRUE:
                    record.non_cm = True
                elif value.lower() in _FALSE:
                    record.non_cm = False
                else:
                    raise ValueError(value)
            elif key == "N":
                record.conductor = int(value)
            elif key.startswith("alpha."):
                record.alpha_overrides[int(key[6:])] = int(value)
            else:
                raise CorpusFormatError(f"unknown key {key!r}")
        except ValueError:
            raise CorpusFormatError(f"bad value in {item!r}") from None
    return record


def parse_corpus(text: str) -> list[CurveRecord]:
    records = []
    labels = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rec = parse_line(line)
        except CorpusFormatError as exc:
            raise CorpusFormatError(f"line {lineno}: {exc}") from None
        if rec.label in labels:
            raise CorpusFormatError(f"line {lineno}: duplicate label {rec.label!r}")
        labels.add(rec.label)
        records.append(rec)
    return records


def read_corpus(path: str | Path) -> list[CurveRecord]:
    return parse_corpus(Path(path).read_text(encoding="ascii"))


def format_record(rec: CurveRecord) -> str:
    out = f"{rec.label}:" + ",".join(map(str, rec.ainvs))
    if rec.non_cm is not None:
        out += f" non_cm={int(rec.non_cm)}"
    if rec.conductor is not None:
        out += f" N={rec.conductor}"
    for p, k in sorted(rec.alpha_overrides.items()):
        out += f" alpha.{p}={k}"
    return out
