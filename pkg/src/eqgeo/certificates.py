"""Witness certificates: the kept subset, per-step separation evidence, and
the exact oracle that re-establishes radical equality.

Certificates are self-contained JSON: they embed the group definition (with
a content hash) and the full tuple set, so checking needs no workspace
state.  A whole-document SHA-256 guards against byte-level tampering; the
semantic checks run first, so a tampered separator is reported as an
evaluation mismatch, not just a hash failure.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional

from .errors import EqgeoError, ValidationError
from .groups import group_from_dict, group_hash
from .words import Word, vanishes

_CANON = {"sort_keys": True, "separators": (",", ":")}
FORMAT_TAG = "eqgeo-witness-certificate/1"


@dataclass
class WitnessStep:
    """One greedy decision: the tuple kept, the word separating it from the
    set kept so far (None for the unconditional first keep), and the indices
    the word provably vanishes on."""

    added_index: int
    separator: Optional[Word]
    vanishes_on: tuple
    factor: Optional[str] = None


@dataclass
class WitnessCertificate:
    tuple_set: object  # TupleSet
    kept: tuple
    steps: tuple
    oracle: str
    engine: str
    coeffs: object = "diophantine"
    extra: dict = field(default_factory=dict)

    def e0(self):
        return self.tuple_set.subset(self.kept)

    # -- serialization -----------------------------------------------------

    def _separator_text(self, step: WitnessStep) -> Optional[str]:
        from .parser import print_word

        if step.separator is None:
            return None
        if self.engine == "finite-extension":
            k = self.tuple_set.backend.acting.order()
            return print_word(step.separator, y_block=k)
        return print_word(step.separator)

    def to_dict(self) -> dict:
        from .radical import serialize_coeffs

        ts = self.tuple_set
        backend = ts.backend
        body = {
            "format": FORMAT_TAG,
            "group": backend.describe(),
            "group_hash": group_hash(backend),
            "arity": ts.arity,
            "tuples": [
                [backend.serialize_elem(x) for x in t] for t in ts.tuples
            ],
            "kept": list(self.kept),
            "E0": [
                [backend.serialize_elem(x) for x in ts.tuples[i]]
                for i in self.kept
            ],
            "steps": [
                {
                    "added_index": st.added_index,
                    "added": [
                        backend.serialize_elem(x) for x in ts.tuples[st.added_index]
                    ],
                    "separator": self._separator_text(st),
                    "vanishes_on": list(st.vanishes_on),
                    "factor": st.factor,
                    "checked": True,
                }
                for st in self.steps
            ],
            "oracle": self.oracle,
            "engine": self.engine,
            "coefficients": serialize_coeffs(backend, self.coeffs),
            "extra": self.extra,
        }
        body["sha256"] = _payload_hash(body)
        return body

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)


def _payload_hash(body: dict) -> str:
    payload = {k: v for k, v in body.items() if k != "sha256"}
    return hashlib.sha256(json.dumps(payload, **_CANON).encode()).hexdigest()


@dataclass
class CheckReport:
    ok: bool
    failures: list

    def summary(self) -> dict:
        return {"ok": self.ok, "failures": self.failures}


def _parse_separator(text, engine, backend, arity, factor):
    from .parser import parse_word

    if engine == "product":
        fac = backend.left if factor == "left" else backend.right
        return parse_word(text, fac, arity)
    if engine == "finite-extension":
        k = backend.acting.order()
        return parse_word(text, backend.normal, arity * k, y_block=k)
    return parse_word(text, backend, arity)


def check_certificate(data: dict, budget: Optional[int] = None) -> CheckReport:
    """Re-validate a certificate from its JSON form.

    Checks run in order: structure, step evidence (each separator really
    separates), the final radical-equality oracle, then the document hash.
    All failures are collected rather than stopping at the first.
    """
    failures: list[str] = []
    try:
        _check_inner(data, failures, budget)
    except EqgeoError as exc:
        failures.append(f"validation error: {exc}")
    except (KeyError, TypeError, IndexError, AttributeError) as exc:
        failures.append(f"malformed certificate: {exc!r}")
    return CheckReport(ok=not failures, failures=failures)


def _check_inner(data: dict, failures: list, budget: Optional[int]):
    from .decomposition import check_finite_extension_equality, lambda_classes
    from .radical import (
        TupleSet,
        is_kernel_backend,
        parse_coeffs,
        radical_le_raw,
    )

    if data.get("format") != FORMAT_TAG:
        failures.append(f"unknown format {data.get('format')!r}")
        return
    backend = group_from_dict(data["group"])
    if group_hash(backend) != data.get("group_hash"):
        failures.append("group hash mismatch")
    arity = int(data["arity"])
    ts = TupleSet.from_dict(
        {"group": data["group"], "arity": arity, "tuples": data["tuples"]},
        backend=backend,
    )
    kept = [int(i) for i in data["kept"]]
    if len(set(kept)) != len(kept) or any(not 0 <= i < len(ts) for i in kept):
        failures.append("kept indices out of range or duplicated")
        return
    e0_expected = [
        [backend.serialize_elem(x) for x in ts.tuples[i]] for i in kept
    ]
    if data.get("E0") != e0_expected:
        failures.append("E0 listing does not match kept indices")
    engine = data.get("engine")
    coeffs = parse_coeffs(backend, data.get("coefficients", "diophantine"))

    # -- step evidence ------------------------------------------------------
    steps = data.get("steps", [])
    added_order = [int(s["added_index"]) for s in steps]
    if engine in ("greedy-closure", "abelian-lattice"):
        if added_order != kept:
            failures.append("step order does not match kept indices")
    elif engine == "product":
        union = sorted(set(added_order))
        if union != sorted(kept):
            failures.append("kept indices are not the union of factor steps")
    for s in steps:
        text = s.get("separator")
        j = int(s["added_index"])
        if text is None:
            continue
        try:
            w = _parse_separator(text, engine, backend, arity, s.get("factor"))
        except EqgeoError as exc:
            failures.append(f"separator unparsable at index {j}: {exc}")
            continue
        ok = _step_separates(
            w, s, ts, backend, engine, failures_index=j
        )
        if not ok:
            failures.append(f"separator at index {j}: evaluation mismatch")

    # -- final oracle --------------------------------------------------------
    e0_tuples = [ts.tuples[i] for i in kept]
    if engine in ("greedy-closure", "abelian-lattice"):
        bad = radical_le_raw(
            backend, arity, e0_tuples, list(ts.tuples), coeffs, budget
        )
        if bad is not None:
            failures.append("radical equality fails: kept set is not dense")
    elif engine == "product":
        for side in ("left", "right"):
            fac = backend.left if side == "left" else backend.right
            pos = 0 if side == "left" else 1
            proj_kept = [tuple(x[pos] for x in t) for t in e0_tuples]
            proj_all = [tuple(x[pos] for x in t) for t in ts.tuples]
            bad = radical_le_raw(fac, arity, proj_kept, proj_all, "diophantine", budget)
            if bad is not None:
                failures.append(f"{side} factor radical equality fails")
    elif engine == "finite-extension":
        errs = check_finite_extension_equality(ts, kept, budget)
        failures.extend(errs)
    else:
        failures.append(f"unknown engine {engine!r}")

    # -- document hash --------------------------------------------------------
    if data.get("sha256") != _payload_hash(data):
        failures.append("document hash mismatch")


def _step_separates(w, step_data, ts, backend, engine, failures_index) -> bool:
    j = int(step_data["added_index"])
    vanish = [int(i) for i in step_data.get("vanishes_on", [])]
    factor = step_data.get("factor")
    if engine == "product":
        pos = 0 if factor == "left" else 1
        fac = backend.left if factor == "left" else backend.right
        pts = [tuple(x[pos] for x in ts.tuples[i]) for i in vanish]
        target = tuple(x[pos] for x in ts.tuples[j])
        return all(vanishes(w, p, target=fac) for p in pts) and not vanishes(
            w, target, target=fac
        )
    if engine == "finite-extension":
        from .decomposition import prime_tuple

        H = backend.normal
        pts = [
            prime_tuple(backend, tuple(x[1] for x in ts.tuples[i])) for i in vanish
        ]
        target = prime_tuple(backend, tuple(x[1] for x in ts.tuples[j]))
        return all(vanishes(w, p, target=H) for p in pts) and not vanishes(
            w, target, target=H
        )
    pts = [ts.tuples[i] for i in vanish]
    return all(vanishes(w, p, target=backend) for p in pts) and not vanishes(
        w, ts.tuples[j], target=backend
    )


def load_certificate_file(path: str) -> dict:
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        return json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ValidationError(f"unreadable certificate: {exc}") from exc
