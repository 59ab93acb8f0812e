from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
import json
from typing import Callable, Dict, Any, Optional, TypeVar

import parallel
from certify import FactStore, Statement, query, saturate
from complexes import SimplicialMap, euler_characteristic, iterated_subdivision
from covers import VertexCover, cat_lower, cat_upper, validate_cover
from errors import CatCoverError
from fca import check_fca
from groups import Budget, GroupClass, abelianization, edge_path_presentation
from schemas import (
    CatRequest,
    CertifyRequest,
    ClassQuery,
    ComplexFile,
    ComplexRequest,
    CoverCheckRequest,
    FcaRequest,
    SubdivideRequest,
)
from settings import Settings
from workspace import complex_from_dict, complex_to_dict, load_facts

settings = Settings.from_env()
parallel.configure(settings.workers)

app = FastAPI(title="catcover API")

# CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

T = TypeVar("T")


def _run(work: Callable[[], T]) -> T:
    try:
        return work()
    except CatCoverError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except HTTPException:
        raise
    except Exception as e:
        raise HTTPException(status_code=500, detail=str(e))


def _complex(doc: ComplexFile):
    return complex_from_dict(doc.model_dump())


def _budget(request: Optional[ClassQuery] = None) -> Budget:
    max_cosets = request.max_cosets if request is not None and request.max_cosets else settings.max_cosets
    return Budget(max_cosets, settings.tietze_moves)


def _verdict(v) -> Dict[str, Any]:
    return {"answer": v.answer.value, "justification": list(v.justification)}


@app.get("/")
async def root():
    return {"status": "ok"}


@app.post("/api/validate")
def validate_endpoint(request: ComplexRequest):
    def work():
        X = _complex(request.complex)
        return {
            "name": X.name,
            "dimension": X.dimension,
            "f_vector": X.f_vector(),
            "connected": X.is_connected(),
        }
    return _run(work)


@app.post("/api/chi")
def chi_endpoint(request: ComplexRequest):
    return _run(lambda: {"chi": euler_characteristic(_complex(request.complex))})


@app.post("/api/subdivide")
def subdivide_endpoint(request: SubdivideRequest):
    def work():
        X = _complex(request.complex)
        steps = iterated_subdivision(X, request.depth)
        return complex_to_dict(steps[-1].subdivided if steps else X)
    return _run(work)


@app.post("/api/pi1")
def pi1_endpoint(request: ComplexRequest):
    def work():
        P, _ = edge_path_presentation(_complex(request.complex), 0)
        return {"presentation": P.to_dict(), "abelianization": abelianization(P).to_dict()}
    return _run(work)


@app.post("/api/cat/upper")
def cat_upper_endpoint(request: CatRequest):
    def work():
        X = _complex(request.complex)
        bound = cat_upper(
            X, GroupClass.parse(request.group_class), request.strategy, _budget(request),
            settings.exact_vertex_cap, settings.greedy_depth,
        )
        return {
            "bound": bound.bound,
            "strategy": bound.strategy,
            "optimal": bound.optimal,
            "subdivision_depth": bound.subdivision_depth,
            "complex": complex_to_dict(bound.cover.complex),
            "cover": bound.cover.to_dict(),
            "pieces": [_verdict(v) for v in bound.validation.piece_verdicts],
        }
    return _run(work)


@app.post("/api/cat/lower")
def cat_lower_endpoint(request: CatRequest):
    def work():
        X = _complex(request.complex)
        return {"bound": cat_lower(X, GroupClass.parse(request.group_class), _budget(request))}
    return _run(work)


@app.post("/api/cover/check")
def cover_check_endpoint(request: CoverCheckRequest):
    def work():
        cover = VertexCover(_complex(request.complex), tuple(tuple(p) for p in request.pieces), request.partition)
        validation = validate_cover(cover, GroupClass.parse(request.group_class), _budget(request))
        return {
            "overall": _verdict(validation.overall),
            "pieces": [_verdict(v) for v in validation.piece_verdicts],
        }
    return _run(work)


@app.post("/api/fca/check")
def fca_check_endpoint(request: FcaRequest):
    def work():
        f = SimplicialMap(_complex(request.source), _complex(request.target), tuple(request.vertex_map), "f")
        result = check_fca(f, GroupClass.parse(request.group_class), request.dim, _budget(request))
        return {
            "verdict": _verdict(result.verdict),
            "fibres": [
                {"simplex": list(r.target_simplex), "fibre_vertices": r.fibre.vertex_count,
                 "overall": _verdict(r.overall)}
                for r in result.reports
            ],
        }
    return _run(work)


@app.post("/api/certify")
def certify_endpoint(request: CertifyRequest):
    def work():
        goal = Statement.parse(request.goal)
        store = load_facts(
            [json.dumps(line.model_dump()) for line in request.facts], FactStore(_budget())
        )
        report = saturate(store, settings.saturation_rounds, settings.max_facts)
        result = query(store, goal)
        return {
            "success": result.success,
            "trace": result.render(),
            "rules": result.trace.rule_ids() if result.trace is not None else [],
            "depth": result.trace.depth if result.trace is not None else None,
            "exhausted": report.exhausted,
            "contradictions": [c.description for c in report.contradictions],
        }
    return _run(work)


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
