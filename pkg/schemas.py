"""
Pydantic models for the JSON files and the HTTP request bodies.
"""

from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

Scalar = Union[bool, int, str, None]


class ComplexFile(BaseModel):
    name: str
    vertex_count: int = Field(ge=0)
    maximal_simplices: List[List[int]]
    # optional explicit simplex list; when given it is used as is and must be face closed
    simplices: Optional[List[List[int]]] = None


class MapFile(BaseModel):
    source: str
    target: str
    vertex_map: List[int]
    name: str = "f"


class CoverFile(BaseModel):
    complex: str
    pieces: List[List[int]]
    partition: bool = False


class PresentationFile(BaseModel):
    generators: int = Field(ge=0)
    relators: List[List[int]] = []


class BundleFile(BaseModel):
    kind: Literal["product", "mapping_torus"]
    # product: [fibre, base] complex names
    factors: Optional[List[str]] = None
    fibre: Optional[str] = None
    # vertex map of the automorphism of the fibre
    automorphism: Optional[List[int]] = None
    name: str = ""


class StatementModel(BaseModel):
    predicate: str
    args: List[Scalar]


class ProvenanceModel(BaseModel):
    kind: Literal["axiom", "computed"]
    citation: Optional[str] = None
    witness: Optional[dict] = None


class FactLine(BaseModel):
    statement: StatementModel
    provenance: ProvenanceModel


class ClassQuery(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    group_class: str = Field(alias="class")
    max_cosets: Optional[int] = Field(default=None, ge=1)


class ComplexRequest(BaseModel):
    complex: ComplexFile


class SubdivideRequest(ComplexRequest):
    depth: int = Field(default=1, ge=0, le=4)


class CatRequest(ComplexRequest, ClassQuery):
    strategy: Literal["stars", "greedy", "exact"] = "greedy"


class CoverCheckRequest(ComplexRequest, ClassQuery):
    pieces: List[List[int]]
    partition: bool = False


class FcaRequest(ClassQuery):
    source: ComplexFile
    target: ComplexFile
    vertex_map: List[int]
    dim: int = Field(ge=0)


class CertifyRequest(BaseModel):
    facts: List[FactLine]
    goal: str
