import logging

from fastapi import APIRouter, HTTPException, Query
from starlette.concurrency import run_in_threadpool

from homore.commands import make_command, run
from homore.errors import HomoreError, UsageError
from homore.formats import builtin_names, resolve_algebra
from homore.ore import pi_show
from homore.schemas import ComputeRequest, ComputeResponse, ErrorResponse

logger = logging.getLogger(__name__)

router = APIRouter(
    prefix="/compute",
    tags=["Compute"],
)


def _http_error(exc: HomoreError) -> HTTPException:
    status = 422 if isinstance(exc, UsageError) else 400
    return HTTPException(
        status_code=status,
        detail=ErrorResponse(error=exc.message, details=exc.details or None).model_dump(),
    )


# ----------------------------------------------------------------
# 🔹 POST /compute → run one verb, exactly as the CLI would
# ----------------------------------------------------------------
@router.post("", response_model=ComputeResponse)
async def compute(request: ComputeRequest):
    """
    Property failures (exit 3) are a normal answer and come back with status 200;
    parse and usage errors map to 422, domain errors to 400.
    """
    try:
        cmd = make_command(request.verb, request.args, request.options)
    except HomoreError as exc:
        raise _http_error(exc)

    # Computations are CPU-bound and synchronous
    result = await run_in_threadpool(run, cmd)
    if result.error is not None:
        logger.info("compute %s failed: %s", request.verb, result.error.message)
        raise _http_error(result.error)
    return ComputeResponse(exit_code=result.exit_code, stdout=result.stdout, stderr=result.stderr)


# ----------------------------------------------------------------
# 🔹 GET /compute/algebras → builtin algebras and their dimensions
# ----------------------------------------------------------------
@router.get("/algebras")
async def list_algebras():
    algebras = []
    for name in builtin_names():
        alg = resolve_algebra(name)
        algebras.append(
            {
                "name": name,
                "dim": alg.dim,
                "basis": list(alg.basis_names),
                "unital": alg.unit is not None,
                "associative": alg.associative,
            }
        )
    return {"total": len(algebras), "algebras": algebras}


# ----------------------------------------------------------------
# 🔹 GET /compute/pi → symbolic word sum of pi_i^m
# ----------------------------------------------------------------
@router.get("/pi")
async def show_pi(i: int = Query(..., ge=0), m: int = Query(..., ge=0)):
    try:
        words = pi_show(i, m)
    except HomoreError as exc:
        raise _http_error(exc)
    return {"i": i, "m": m, "words": words}
