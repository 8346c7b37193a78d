from fastapi import FastAPI
from fastapi.openapi.utils import get_openapi
import uvicorn

from fockcrystal.core.config import settings
from fockcrystal.core.logging import get_logger
from fockcrystal.core.middlewares import ErrorHandlingMiddleware, exception_handler
from fockcrystal.core.exceptions import AppBaseException
from fockcrystal.core.metrics import MetricsMiddleware, metrics_endpoint
from fockcrystal.api.routes import router as api_router

# Initialize logger
logger = get_logger("main")

DESCRIPTION = "Crystals of level-2 Fock spaces: Uglov bipartitions, symbols and the bijections between them"


def custom_openapi():
    if app.openapi_schema:
        return app.openapi_schema

    openapi_schema = get_openapi(
        title=settings.APP_NAME,
        version="0.1.0",
        description=DESCRIPTION,
        routes=app.routes,
    )

    app.openapi_schema = openapi_schema
    return app.openapi_schema


app = FastAPI(
    title=settings.APP_NAME,
    description=DESCRIPTION,
    version="0.1.0",
    docs_url="/docs",
    redoc_url="/redoc",
)

app.openapi = custom_openapi

# Add Prometheus metrics middleware
app.add_middleware(MetricsMiddleware)

# Add error handling middleware
app.add_middleware(ErrorHandlingMiddleware)


# Register exception handlers
app.add_exception_handler(AppBaseException, exception_handler)


# Health check endpoints
@app.get("/healthz", tags=["Health"])
async def healthz():
    return {"status": "ok"}


# Prometheus metrics endpoint
@app.get("/metrics", include_in_schema=False)
def metrics():
    return metrics_endpoint()


# Routes
app.include_router(api_router, prefix=settings.API_PREFIX, tags=["Crystals"])


@app.get("/")
async def root():
    return {
        "message": f"Welcome to the {settings.APP_NAME} API",
        "docs": "/docs",
        "endpoints": [
            f"{settings.API_PREFIX}/{name}"
            for name in ("enumerate", "map", "symbol", "canonical", "basic-set", "graph", "plan")
        ],
    }


def serve():
    logger.info(f"Serving {settings.APP_NAME} on {settings.HOST}:{settings.PORT}", extra={"api_prefix": settings.API_PREFIX})
    uvicorn.run("fockcrystal.main:app", host=settings.HOST, port=settings.PORT, reload=settings.DEBUG)


if __name__ == "__main__":
    serve()
