"""
Loading, validating and writing the JSON files the tools exchange.

Files name the complexes they refer to; a name is resolved against what the
workspace already holds, then against <name>.json next to the referring file.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Type, TypeVar

from pydantic import BaseModel, ValidationError

from certify import FactStore, ProvenanceKind, Statement
from complexes import SimplicialComplex, SimplicialMap, build_complex
from covers import VertexCover
from errors import MalformedInputError
from fibration import BundleData, mapping_torus_bundle, product_bundle
from groups import Budget, GroupPresentation
from schemas import (
    BundleFile,
    ComplexFile,
    CoverFile,
    FactLine,
    MapFile,
    PresentationFile,
)

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)


def parse_model(model: Type[M], data: Any) -> M:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "document"
        raise MalformedInputError(f"{model.__name__}: {where}: {first['msg']}") from None


def read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise MalformedInputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"{path} is not valid JSON: {e.msg} at line {e.lineno}") from None


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def write_json(path, data: Any) -> None:
    Path(path).write_text(dumps(data), encoding="utf-8")


def complex_from_dict(data: Any) -> SimplicialComplex:
    doc = parse_model(ComplexFile, data)
    if doc.simplices is None:
        simplices = build_complex(doc.maximal_simplices, doc.name).simplices if doc.maximal_simplices else frozenset()
    else:
        simplices = frozenset(tuple(s) for s in doc.simplices)
    X = SimplicialComplex(doc.vertex_count, simplices, doc.name)
    if doc.simplices is not None and set(X.maximal_simplices()) != {tuple(sorted(s)) for s in doc.maximal_simplices}:
        raise MalformedInputError("maximal_simplices does not match the simplex list")
    return X


def complex_to_dict(X: SimplicialComplex) -> Dict:
    return {
        "name": X.name,
        "vertex_count": X.vertex_count,
        "maximal_simplices": [list(s) for s in X.maximal_simplices()],
    }


def map_to_dict(f: SimplicialMap) -> Dict:
    return {"source": f.source.name, "target": f.target.name, "vertex_map": list(f.vertex_map), "name": f.name}


def cover_to_dict(c: VertexCover) -> Dict:
    return c.to_dict()


def presentation_from_dict(data: Any) -> GroupPresentation:
    doc = parse_model(PresentationFile, data)
    return GroupPresentation.from_lists(doc.generators, doc.relators)


def witness_to_dict(witness: Any) -> Dict:
    if isinstance(witness, VertexCover):
        return {"type": "cover", "complex": complex_to_dict(witness.complex),
                "pieces": [list(p) for p in witness.pieces], "partition": witness.partition}
    if isinstance(witness, SimplicialComplex):
        return {"type": "complex", "complex": complex_to_dict(witness)}
    if isinstance(witness, SimplicialMap):
        return {"type": "map", "source": complex_to_dict(witness.source), "target": complex_to_dict(witness.target),
                "vertex_map": list(witness.vertex_map), "name": witness.name}
    if isinstance(witness, tuple):
        f, cover = witness
        return {"type": "map_cover", "map": witness_to_dict(f), "pieces": [list(p) for p in cover.pieces],
                "partition": cover.partition}
    raise MalformedInputError(f"cannot serialise witness of type {type(witness).__name__}")


def witness_from_dict(data: Dict) -> Any:
    kind = data.get("type")
    try:
        if kind == "cover":
            return VertexCover(complex_from_dict(data["complex"]), tuple(map(tuple, data["pieces"])),
                               bool(data.get("partition", False)))
        if kind == "complex":
            return complex_from_dict(data["complex"])
        if kind == "map":
            return SimplicialMap(complex_from_dict(data["source"]), complex_from_dict(data["target"]),
                                 tuple(data["vertex_map"]), data.get("name", "f"))
        if kind == "map_cover":
            f = witness_from_dict(data["map"])
            return f, VertexCover(f.source, tuple(map(tuple, data["pieces"])), bool(data.get("partition", False)))
    except (KeyError, TypeError) as e:
        raise MalformedInputError(f"witness of type {kind!r} is incomplete: {e}") from None
    raise MalformedInputError(f"unknown witness type {kind!r}")


def load_facts(lines: Iterable[str], store: Optional[FactStore] = None) -> FactStore:
    store = store if store is not None else FactStore()
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as e:
            raise MalformedInputError(f"facts line {number} is not valid JSON: {e.msg}") from None
        doc = parse_model(FactLine, raw)
        statement = Statement.of(doc.statement.predicate, *doc.statement.args)
        if doc.provenance.kind == "axiom":
            store.assert_axiom(statement, doc.provenance.citation or "")
        else:
            if doc.provenance.witness is None:
                raise MalformedInputError(f"facts line {number}: computed fact without witness")
            store.add_computed(statement, witness_from_dict(doc.provenance.witness))
    return store


def fact_lines(store: FactStore) -> List[str]:
    """Axioms and computed facts, one JSON object per line; derived facts are left to saturation."""
    lines = []
    for fact in store:
        p = fact.provenance
        if p.kind == ProvenanceKind.AXIOM:
            provenance = {"kind": "axiom", "citation": p.citation}
        elif p.kind == ProvenanceKind.COMPUTED:
            provenance = {"kind": "computed", "witness": witness_to_dict(p.witness)}
        else:
            continue
        lines.append(json.dumps({"statement": fact.statement.to_dict(), "provenance": provenance}, ensure_ascii=False))
    return lines


@dataclass
class Workspace:
    """Named objects loaded from files; every object is re-validated on load."""
    complexes: Dict[str, SimplicialComplex] = field(default_factory=dict)
    maps: Dict[str, SimplicialMap] = field(default_factory=dict)
    budget: Budget = field(default_factory=Budget)

    def add_complex(self, X: SimplicialComplex) -> SimplicialComplex:
        known = self.complexes.get(X.name)
        if known is not None and known != X:
            raise MalformedInputError(f"two different complexes are named {X.name}")
        self.complexes[X.name] = X
        return X

    def load_complex(self, path) -> SimplicialComplex:
        X = self.add_complex(complex_from_dict(read_json(path)))
        logger.debug("loaded complex %s from %s", X.name, path)
        return X

    def resolve(self, name: str, near: Optional[Path] = None) -> SimplicialComplex:
        if name in self.complexes:
            return self.complexes[name]
        if near is not None:
            candidate = Path(near).parent / f"{name}.json"
            if candidate.exists():
                X = self.load_complex(candidate)
                if X.name != name:
                    raise MalformedInputError(f"{candidate} holds {X.name}, expected {name}")
                return X
        raise MalformedInputError(f"unknown complex {name!r}")

    def load_map(self, path) -> SimplicialMap:
        doc = parse_model(MapFile, read_json(path))
        source, target = self.resolve(doc.source, Path(path)), self.resolve(doc.target, Path(path))
        f = SimplicialMap(source, target, tuple(doc.vertex_map), doc.name)
        self.maps[f.name] = f
        return f

    def load_cover(self, path) -> VertexCover:
        doc = parse_model(CoverFile, read_json(path))
        X = self.resolve(doc.complex, Path(path))
        return VertexCover(X, tuple(tuple(p) for p in doc.pieces), doc.partition)

    def load_bundle(self, path) -> BundleData:
        doc = parse_model(BundleFile, read_json(path))
        here = Path(path)
        if doc.kind == "product":
            if not doc.factors or len(doc.factors) != 2:
                raise MalformedInputError("a product bundle needs factors [fibre, base]")
            fibre, base = (self.resolve(n, here) for n in doc.factors)
            b = product_bundle(fibre, base, doc.name)
        else:
            if doc.fibre is None or doc.automorphism is None:
                raise MalformedInputError("a mapping torus bundle needs fibre and automorphism")
            fibre = self.resolve(doc.fibre, here)
            g = SimplicialMap(fibre, fibre, tuple(doc.automorphism), "g")
            b = mapping_torus_bundle(fibre, g, doc.name)
        self.add_complex(b.total)
        self.add_complex(b.base)
        return b

    def load_facts(self, path, store: Optional[FactStore] = None) -> FactStore:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise MalformedInputError(f"cannot read {path}: {e.strerror}") from None
        return load_facts(text.splitlines(), store if store is not None else FactStore(self.budget))
