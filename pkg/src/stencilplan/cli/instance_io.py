"""JSON instance and placement files (integer nanometres, canonical order)."""
from __future__ import annotations

import json
from pathlib import Path

from ..model import CharacterCandidate, Instance, InputError, Placement, StencilSpec

CHAR_KEYS = ("id", "w", "h", "sl", "sr", "st", "sb", "vsb", "repeats")


def instance_to_doc(instance: Instance) -> dict:
    st = instance.stencil
    doc = {
        "mode": instance.mode,
        "stencil": {"w": st.width, "h": st.height, "rows": st.rows, "row_h": st.row_height},
        "regions": instance.regions,
        "chars": [
            {"id": c.id, "w": c.w, "h": c.h, "sl": c.sl, "sr": c.sr, "st": c.st, "sb": c.sb,
             "vsb": c.vsb, "repeats": list(c.repeats)}
            for c in sorted(instance.candidates, key=lambda c: c.id)
        ],
    }
    if instance.cp != 1:
        doc["cp"] = instance.cp
    return doc


def _int(doc, key, where):
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(f"{where}: '{key}' must be an integer")
    return v


def instance_from_doc(doc: dict) -> Instance:
    if not isinstance(doc, dict):
        raise InputError("instance document must be a JSON object")
    try:
        mode = doc["mode"]
        sd = doc["stencil"]
        chars = doc["chars"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"missing field {exc}") from None
    if mode not in ("1d", "2d"):
        raise InputError(f"unknown mode {mode!r}")
    if mode == "1d":
        stencil = StencilSpec(_int(sd, "w", "stencil"), _int(sd, "h", "stencil"),
                              _int(sd, "rows", "stencil"), _int(sd, "row_h", "stencil"))
    else:
        stencil = StencilSpec(_int(sd, "w", "stencil"), _int(sd, "h", "stencil"))
    cands = []
    for k, cd in enumerate(chars):
        where = f"chars[{k}]"
        if not isinstance(cd, dict) or not isinstance(cd.get("id"), str):
            raise InputError(f"{where}: needs a string id")
        reps = cd.get("repeats")
        if not isinstance(reps, list) or not all(isinstance(t, int) and not isinstance(t, bool) for t in reps):
            raise InputError(f"{where}: repeats must be a list of integers")
        cands.append(CharacterCandidate(cd["id"], *(_int(cd, key, where) for key in CHAR_KEYS[1:8]),
                                        tuple(reps)))
    regions = _int(doc, "regions", "instance")
    cp = doc.get("cp", 1)
    return Instance(tuple(cands), stencil, regions, cp)


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def load_instance(path) -> Instance:
    return instance_from_doc(read_json(path))


def save_instance(instance: Instance, path):
    Path(path).write_text(dumps(instance_to_doc(instance)))


def placement_to_doc(placement: Placement) -> dict:
    return {cid: list(pos) for cid, pos in sorted(placement.entries.items())}


def placement_from_doc(doc) -> Placement:
    if not isinstance(doc, dict):
        raise InputError("placement document must be a JSON object")
    entries = {}
    for cid, pos in doc.items():
        if (not isinstance(pos, list) or len(pos) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in pos)):
            raise InputError(f"{cid}: position must be a pair of integers")
        entries[cid] = tuple(pos)
    return Placement(entries)


def save_placement(placement: Placement, path):
    Path(path).write_text(dumps(placement_to_doc(placement)))


def load_placement(path) -> Placement:
    return placement_from_doc(read_json(path))
