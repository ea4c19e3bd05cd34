from __future__ import annotations
from fastapi import FastAPI

from . import __version__
from .config import configure_logging, settings
from .routers.algebra import router as algebra_router

configure_logging()

app = FastAPI(title=settings.app_name, version=__version__)

app.include_router(algebra_router)


@app.get("/")
def root():
    return {"name": settings.app_name, "status": "ok", "version": __version__}
