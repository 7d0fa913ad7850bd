"""Built-in parabolic data: named entries resolving to (system, datum).

Entries cover the foldings exercised by the cross-validation suite; any
other datum can be requested on the command line by series, rank,
automorphism label and node list.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .dynkin import datum_from_labels
from .relroot import RelativeRootSystem, classification_label, project
from .rootsys import build_root_system


class UnknownEntryError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    series: str
    rank: int
    gamma_label: str
    J_spec: object  # "all" or a tuple of node indices

    @property
    def key(self) -> str:
        if self.J_spec == "all":
            jpart = "all"
        else:
            jpart = ",".join(str(j) for j in self.J_spec)
        return "%s:%d:%s:%s" % (self.series, self.rank, self.gamma_label, jpart)


BUILTIN = (
    CatalogEntry("A2", "A", 2, "trivial", "all"),
    CatalogEntry("B2", "B", 2, "trivial", "all"),
    CatalogEntry("G2", "G", 2, "trivial", "all"),
    CatalogEntry("BC1-from-A2", "A", 2, "flip", "all"),
    CatalogEntry("C2-from-A3", "A", 3, "flip", "all"),
    CatalogEntry("BC2-from-A4", "A", 4, "flip", "all"),
    CatalogEntry("BC3-from-A6", "A", 6, "flip", "all"),
    CatalogEntry("F4-from-E6", "E", 6, "flip", "all"),
    CatalogEntry("G2-from-D4", "D", 4, "triality", "all"),
    CatalogEntry("B2-J1", "B", 2, "trivial", (0,)),
)

ALIASES = {
    "BC-from-A4": "BC2-from-A4",
}

_BY_NAME = {e.name: e for e in BUILTIN}


def entries():
    return BUILTIN


def lookup(name: str) -> CatalogEntry:
    name = ALIASES.get(name, name)
    if name not in _BY_NAME:
        raise UnknownEntryError(
            "unknown catalog entry %r (see the catalog command)" % name)
    return _BY_NAME[name]


def entry_for(series: str, rank: int, gamma_label: str, J_spec) -> CatalogEntry:
    if J_spec != "all":
        J_spec = tuple(sorted(int(j) for j in J_spec))
    for e in BUILTIN:
        if (e.series, e.rank, e.gamma_label, e.J_spec) == (series, rank, gamma_label, J_spec):
            return e
    name = "%s%d-%s-%s" % (series, rank, gamma_label,
                           "all" if J_spec == "all" else "J" + "".join(map(str, J_spec)))
    return CatalogEntry(name, series, rank, gamma_label, J_spec)


@lru_cache(maxsize=None)
def _resolve_key(series, rank, gamma_label, J_spec):
    system = build_root_system(series, rank)
    datum = datum_from_labels(system, gamma_label, J_spec)
    proj, rel = project(system, datum)
    return proj, rel


def resolve(entry: CatalogEntry):
    """(projection, relative system) for an entry, cached per datum."""
    return _resolve_key(entry.series, entry.rank, entry.gamma_label, entry.J_spec)


def describe(entry: CatalogEntry) -> dict:
    proj, rel = resolve(entry)
    return {
        "name": entry.name,
        "ambient": "%s%d" % (entry.series, entry.rank),
        "gamma": entry.gamma_label,
        "J": "all" if entry.J_spec == "all" else list(entry.J_spec),
        "relative_type": classification_label(rel),
        "relative_roots": len(rel.elements),
    }


def relative_system(entry: CatalogEntry) -> RelativeRootSystem:
    return resolve(entry)[1]
