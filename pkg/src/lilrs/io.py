"""JSON fixture formats: messages, structured codewords, received words, realizations.

Field elements are serialized as integer indices whose base-q digits are the
polynomial-basis coordinates; F_q matrices are serialized as digit rows.
"""

from __future__ import annotations

import json

import numpy as np

from .code import CodeSpec, MessageVector
from .decoders import ReceivedWord
from .subspace import SubspaceTuple

MESSAGE_FORMAT = "lilrs-message"
CODEWORD_FORMAT = "lilrs-codeword"
RECEIVED_FORMAT = "lilrs-received"
TUPLE_FORMAT = "lilrs-subspace-tuple"


def code_header(spec: CodeSpec) -> dict:
    return {
        "field": spec.field.to_config(),
        "shots": spec.num_shots,
        "interleaving": spec.interleaving,
        "shot_dims": list(spec.shot_dims),
        "k": spec.dimension,
    }


def message_to_json(spec: CodeSpec, msg: MessageVector) -> dict:
    return {
        "format": MESSAGE_FORMAT,
        "code": code_header(spec),
        "polys": [list(p.coeffs) for p in msg.polys],
    }


def message_from_json(spec: CodeSpec, obj: dict) -> MessageVector:
    if obj.get("format") != MESSAGE_FORMAT:
        raise ValueError("not a message fixture")
    msg = MessageVector.from_coeffs(spec.field, [list(row) for row in obj["polys"]])
    spec.validate_message(msg)
    return msg


def structured_to_json(spec: CodeSpec, shots, fmt: str) -> dict:
    return {
        "format": fmt,
        "code": code_header(spec),
        "shots": [{"rows": np.asarray(M, dtype=np.int64).tolist()} for M in shots],
    }


def received_from_json(spec: CodeSpec, obj: dict) -> ReceivedWord:
    if obj.get("format") not in (RECEIVED_FORMAT, CODEWORD_FORMAT):
        raise ValueError("not a received-word or codeword fixture")
    shots = [np.asarray(s["rows"], dtype=np.int64) for s in obj["shots"]]
    return ReceivedWord(spec, shots)


def tuple_to_json(T: SubspaceTuple) -> dict:
    out = T.to_json()
    out["format"] = TUPLE_FORMAT
    return out


def tuple_from_json(obj: dict) -> SubspaceTuple:
    if obj.get("format") != TUPLE_FORMAT:
        raise ValueError("not a subspace-tuple fixture")
    return SubspaceTuple.from_json(obj)


def dump_json(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_json(path):
    with open(path) as fh:
        return json.load(fh)
