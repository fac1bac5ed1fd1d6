import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI

from homore import __version__
from homore.config import configure_logging, settings
from homore.formats import builtin_names
from homore.routers import compute
from homore.weyl import build_weyl

logger = logging.getLogger(__name__)


# ✅ Warm the Weyl contexts once; validation of O[Y] is the slow part of a cold request
@asynccontextmanager
async def lifespan(app: FastAPI):
    configure_logging()
    for mode in ("zero", "identity"):
        build_weyl(mode)
    logger.info("homore API ready (builtins: %s)", ", ".join(builtin_names()))
    yield
    logger.info("homore API shutting down")


app = FastAPI(
    title="homore",
    version=__version__,
    description="Exact computations in hom-associative algebras, Ore extensions and hom-modules.",
    lifespan=lifespan,
)

# ✅ Register routers
app.include_router(compute.router)


# ✅ Healthcheck
@app.get("/health")
async def healthcheck():
    return {"status": "ok", "version": __version__}


# ✅ Root endpoint
@app.get("/")
async def root():
    return {
        "message": "Welcome to homore",
        "endpoints": {
            "health": "/health",
            "compute": "/compute",
            "algebras": "/compute/algebras",
            "pi": "/compute/pi",
            "docs": "/docs",
        },
    }


# ✅ Only for local development
if __name__ == "__main__":
    import uvicorn

    uvicorn.run("homore.main:app", host="0.0.0.0", port=settings.port, reload=True)
