"""On-disk certificate format: header, body, integrity digest.

Roots inside the body are stored as indices into the canonical relative
root listing so the file stays compact and unambiguous.  Serialization is
canonical (sorted keys, fixed separators), making certificate bytes
reproducible run to run; the digest covers header and body.
"""

from __future__ import annotations

import hashlib
import json

from . import __version__
from .grading import (BorelCertificate, CoreRootEntry, CoreRootGroup,
                      Decomposition, Delegation, GeneratorTag,
                      StrongGradingCertificate)

FORMAT_NAME = "strong-grading-certificate"
FORMAT_VERSION = 1


class CertificateFormatError(ValueError):
    """The file is not a valid certificate (schema or digest failure)."""


def _canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _digest(header, body) -> str:
    blob = _canonical_json({"header": header, "body": body})
    return "sha256:" + hashlib.sha256(blob.encode()).hexdigest()


def to_payload(cert: StrongGradingCertificate, entry_name: str) -> dict:
    rel_roots = [list(r) for r in cert.relative_roots]
    index = {tuple(r): i for i, r in enumerate(cert.relative_roots)}

    def rid(root):
        return index[tuple(root)]

    per_borel = []
    for bc in cert.per_borel:
        groups = []
        for group in bc.groups:
            entries = []
            for e in group.entries:
                d = e.decomposition
                entries.append({
                    "k": e.k,
                    "target": rid(d.target),
                    "beta": rid(d.beta),
                    "gamma_k": rid(d.gamma_k),
                    "preimage": list(d.preimage),
                    "chain": [list(y) for y in d.chain],
                    "split_index": d.split_index,
                    "generators": [
                        {"root": rid(t.root), "tag": t.tag}
                        if t.defer_k is None else
                        {"root": rid(t.root), "tag": t.tag, "defer_k": t.defer_k}
                        for t in e.generators
                    ],
                })
            groups.append({"gamma": rid(group.gamma), "entries": entries})
        per_borel.append({
            "borel_id": bc.borel_id,
            "positive": list(bc.positive_indices),
            "origin_chamber": bc.origin_chamber,
            "simple_images": [list(s) for s in bc.simple_images],
            "cores": groups,
        })
    header = {
        "format": FORMAT_NAME,
        "format_version": FORMAT_VERSION,
        "tool_version": __version__,
        "entry": entry_name,
        "order_fingerprint": cert.fingerprint,
    }
    body = {
        "relative_roots": rel_roots,
        "delegations": [
            {"component": [rid(r) for r in d.component], "reason": d.reason}
            for d in cert.delegations
        ],
        "borel": per_borel,
    }
    return {"header": header, "body": body, "digest": _digest(header, body)}


def from_payload(payload: dict) -> StrongGradingCertificate:
    try:
        header = payload["header"]
        body = payload["body"]
        digest = payload["digest"]
    except (KeyError, TypeError) as err:
        raise CertificateFormatError("missing certificate section: %s" % err)
    if header.get("format") != FORMAT_NAME:
        raise CertificateFormatError("not a %s file" % FORMAT_NAME)
    if header.get("format_version") != FORMAT_VERSION:
        raise CertificateFormatError("unsupported format version")
    if header.get("tool_version") != __version__:
        raise CertificateFormatError(
            "certificate produced by version %r, this is %r"
            % (header.get("tool_version"), __version__))
    if payload["digest"] != _digest(header, body):
        raise CertificateFormatError("integrity digest mismatch")
    try:
        rel_roots = tuple(tuple(r) for r in body["relative_roots"])

        def root(i):
            return rel_roots[i]

        delegations = tuple(
            Delegation(tuple(root(i) for i in d["component"]), d["reason"])
            for d in body["delegations"])
        per_borel = []
        for bc in body["borel"]:
            groups = []
            for g in bc["cores"]:
                entries = []
                for e in g["entries"]:
                    dec = Decomposition(
                        target=root(e["target"]),
                        beta=root(e["beta"]),
                        gamma_k=root(e["gamma_k"]),
                        preimage=tuple(e["preimage"]),
                        chain=tuple(tuple(y) for y in e["chain"]),
                        split_index=e["split_index"])
                    gens = tuple(
                        GeneratorTag(root(t["root"]), t["tag"], t.get("defer_k"))
                        for t in e["generators"])
                    entries.append(CoreRootEntry(e["k"], dec, gens))
                groups.append(CoreRootGroup(root(g["gamma"]), tuple(entries)))
            per_borel.append(BorelCertificate(
                bc["borel_id"], tuple(bc["positive"]), bc["origin_chamber"],
                tuple(tuple(s) for s in bc["simple_images"]), tuple(groups)))
        return StrongGradingCertificate(
            header["order_fingerprint"], rel_roots, delegations, tuple(per_borel))
    except (KeyError, TypeError, IndexError) as err:
        raise CertificateFormatError("malformed certificate body: %s" % err)


def dumps(cert: StrongGradingCertificate, entry_name: str) -> str:
    return _canonical_json(to_payload(cert, entry_name)) + "\n"


def write(path, cert: StrongGradingCertificate, entry_name: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(cert, entry_name))


def read(path):
    """Load a certificate file; returns (certificate, entry_name)."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as err:
            raise CertificateFormatError("not JSON: %s" % err)
    cert = from_payload(payload)
    return cert, payload["header"]["entry"]
