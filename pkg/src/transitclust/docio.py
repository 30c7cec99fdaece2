"""File formats and report rendering.

Two document kinds share one small grammar:

System document::

    # optional comments
    elements: a b c
    a
    a b
    b c

    A header line declares the elements; every following non-empty line is
    one set, whitespace-separated.  Sets are taken literally (singletons
    are NOT auto-added).

Transit document::

    elements: a b c
    a b : a b
    a c : a b c
    b c : b c

    One line per unordered pair: the two endpoints, a colon, then the
    members of the transit set.

A ``.json``-suffixed input is the structured alternative:
``{"elements": [...], "sets": [[...], ...], "metadata": {...}}`` or
``{"elements": [...], "entries": [["u", "v", [...]], ...]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .model import (
    GroundSet,
    ModelError,
    SetSystem,
    TransitFunction,
    Verdict,
    make_transit_function,
)

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """Malformed document text."""


@dataclass(frozen=True)
class SystemDocument:
    elements: tuple[str, ...]
    sets: tuple[tuple[str, ...], ...]
    metadata: dict = field(default_factory=dict)

    def to_set_system(self, *, complete_singletons: bool = False) -> SetSystem:
        gs = GroundSet(self.elements)
        masks = list(dict.fromkeys(gs.mask(s) for s in self.sets))
        if complete_singletons:
            for i in range(gs.n):
                if (1 << i) not in masks:
                    masks.append(1 << i)
        return SetSystem(gs, tuple(masks))

    @classmethod
    def from_set_system(cls, system: SetSystem, **metadata) -> "SystemDocument":
        gs = system.groundset
        return cls(gs.labels,
                   tuple(gs.labels_of(m) for m in system.masks),
                   dict(metadata))

    def to_text(self) -> str:
        lines = []
        if "name" in self.metadata:
            lines.append(f"# {self.metadata['name']}")
        if "description" in self.metadata:
            lines.append(f"# {self.metadata['description']}")
        lines.append("elements: " + " ".join(self.elements))
        for s in self.sets:
            lines.append(" ".join(s))
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        out = {"elements": list(self.elements),
               "sets": [list(s) for s in self.sets]}
        if self.metadata:
            out["metadata"] = dict(self.metadata)
        return out


@dataclass(frozen=True)
class TransitDocument:
    elements: tuple[str, ...]
    entries: tuple[tuple[str, str, tuple[str, ...]], ...]
    metadata: dict = field(default_factory=dict)

    def to_transit_function(self) -> TransitFunction:
        gs = GroundSet(self.elements)
        assignments = {(u, v): members for u, v, members in self.entries}
        if len(assignments) != len(self.entries):
            raise DocumentError("duplicate pair entry")
        return make_transit_function(gs, assignments)

    @classmethod
    def from_transit_function(cls, R: TransitFunction, **metadata) -> "TransitDocument":
        gs = R.groundset
        entries = tuple(
            (gs.labels[u], gs.labels[v], gs.labels_of(bits))
            for u, v, bits in R.pairs())
        return cls(gs.labels, entries, dict(metadata))

    def to_text(self) -> str:
        lines = []
        if "name" in self.metadata:
            lines.append(f"# {self.metadata['name']}")
        lines.append("elements: " + " ".join(self.elements))
        for u, v, members in self.entries:
            lines.append(f"{u} {v} : " + " ".join(members))
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        out = {"elements": list(self.elements),
               "entries": [[u, v, list(m)] for u, v, m in self.entries]}
        if self.metadata:
            out["metadata"] = dict(self.metadata)
        return out


def _parse_lines(text: str) -> tuple[tuple[str, ...], list[str]]:
    elements: tuple[str, ...] | None = None
    body: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("elements:"):
            if elements is not None:
                raise DocumentError("duplicate element declaration")
            names = line[len("elements:"):].split()
            if len(set(names)) != len(names):
                raise DocumentError("duplicate element declaration")
            elements = tuple(names)
            continue
        if elements is None:
            raise DocumentError("set line before the elements header")
        body.append(line)
    if elements is None:
        raise DocumentError("missing 'elements:' header")
    return elements, body


def _check_labels(elements: tuple[str, ...], labels: tuple[str, ...]) -> None:
    known = set(elements)
    for lab in labels:
        if lab not in known:
            raise DocumentError(f"unknown label {lab!r}")


def parse_system_document(text: str) -> SystemDocument:
    elements, body = _parse_lines(text)
    sets = []
    for line in body:
        if ":" in line:
            raise DocumentError("transit entry in a system document")
        labels = tuple(line.split())
        if not labels:
            raise DocumentError("empty set line")
        _check_labels(elements, labels)
        sets.append(labels)
    return SystemDocument(elements, tuple(sets))


def parse_transit_document(text: str) -> TransitDocument:
    elements, body = _parse_lines(text)
    entries = []
    for line in body:
        if ":" not in line:
            raise DocumentError(f"missing ':' in transit entry {line!r}")
        head, _, tail = line.partition(":")
        pair = tuple(head.split())
        if len(pair) != 2:
            raise DocumentError(f"expected two endpoints before ':' in {line!r}")
        members = tuple(tail.split())
        if not members:
            raise DocumentError(f"empty transit set in {line!r}")
        _check_labels(elements, pair + members)
        entries.append((pair[0], pair[1], members))
    return TransitDocument(elements, tuple(entries))


def parse_document(text: str, *, json_mode: bool = False):
    """Parse either document kind, detecting which one it is."""
    if json_mode:
        data = json.loads(text)
        elements = tuple(data["elements"])
        meta = dict(data.get("metadata", {}))
        if "entries" in data:
            entries = tuple((u, v, tuple(m)) for u, v, m in data["entries"])
            return TransitDocument(elements, entries, meta)
        sets = tuple(tuple(s) for s in data["sets"])
        return SystemDocument(elements, sets, meta)
    _, body = _parse_lines(text)
    if any(":" in line for line in body):
        return parse_transit_document(text)
    return parse_system_document(text)


# ---------------------------------------------------------------------------
# Reports


def witness_to_labels(witness, groundset: GroundSet):
    """Map a nested index witness to nested label lists."""
    if witness is None:
        return None
    out = []
    for part in witness:
        if isinstance(part, tuple):
            out.append([groundset.labels[i] for i in part])
        else:
            out.append(groundset.labels[part])
    return out


def verdict_to_dict(v: Verdict, groundset: GroundSet) -> dict:
    d = {"axiom": v.axiom, "holds": v.holds,
         "witness": witness_to_labels(v.witness, groundset)}
    if v.detail is not None:
        d["detail"] = v.detail
    return d


@dataclass(frozen=True)
class Report:
    """Machine-readable check report; the text rendering is derived."""

    subject: str
    checks: tuple[dict, ...] = ()
    ladder: dict | None = None
    order: tuple[str, ...] | None = None
    obstruction: tuple[tuple[str, ...], ...] | None = None

    def to_json_dict(self) -> dict:
        out: dict = {"schema_version": SCHEMA_VERSION, "subject": self.subject,
                     "checks": [dict(c) for c in self.checks]}
        if self.ladder is not None:
            out["ladder"] = dict(self.ladder)
        if self.order is not None:
            out["order"] = list(self.order)
        if self.obstruction is not None:
            out["obstruction"] = [list(c) for c in self.obstruction]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        return cls(
            subject=data["subject"],
            checks=tuple(data["checks"]),
            ladder=data.get("ladder"),
            order=tuple(data["order"]) if "order" in data else None,
            obstruction=tuple(tuple(c) for c in data["obstruction"])
            if "obstruction" in data else None,
        )

    def render_text(self) -> str:
        lines = [f"subject: {self.subject}"]
        for c in self.checks:
            mark = "holds" if c["holds"] else "FAILS"
            line = f"  {c['axiom']}: {mark}"
            if c.get("witness") is not None:
                line += f"  witness={_fmt_witness(c['witness'])}"
            if c.get("detail"):
                line += f"  ({c['detail']})"
            lines.append(line)
        if self.ladder is not None:
            lines.append("  ladder:")
            for name, member in self.ladder.items():
                lines.append(f"    {name}: {'yes' if member else 'no'}")
        if self.order is not None:
            lines.append("  order: " + " < ".join(self.order))
        if self.obstruction is not None:
            sets = ", ".join("{%s}" % ",".join(c) for c in self.obstruction)
            lines.append(f"  obstruction: {sets}")
        return "\n".join(lines) + "\n"

    def all_hold(self) -> bool:
        return all(c["holds"] for c in self.checks)


def _fmt_witness(witness) -> str:
    parts = []
    for p in witness:
        if isinstance(p, list):
            parts.append("{%s}" % ",".join(p))
        else:
            parts.append(str(p))
    return "(" + ", ".join(parts) + ")"
