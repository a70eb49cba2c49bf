"""Request/response models for the service endpoints."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class FoliationSpec(BaseModel):
    """A foliation given as text or as a corpus family with parameters."""

    form: Optional[str] = None  # "expr @ chart" or homogeneous "a; b; c"
    corpus: Optional[str] = None
    d: Optional[int] = None
    lam: Optional[str] = Field(default=None, alias="lambda")
    gamma: Optional[str] = None
    p: Optional[list[str]] = None

    model_config = {"populate_by_name": True}


class AnalyzeRequest(BaseModel):
    foliation: FoliationSpec


class DegenerateRequest(BaseModel):
    foliation: FoliationSpec
    target: Literal["f1", "f2", "h12"]


class CertifyRequest(BaseModel):
    poly: Literal["p3", "p4", "p5"]
    lam: str = Field(alias="lambda")
    samples: int = 100
    seed: int = 0
    mode: Literal["sample", "lambda-symbolic", "full-symbolic"] = "sample"

    model_config = {"populate_by_name": True}


class FitQdRequest(BaseModel):
    degree: int
    seed: int = 0
    train: Optional[int] = None
    holdout: int = 200


class ClosureRequest(BaseModel):
    d: int
    lam: str = Field(alias="lambda")
    seed: int = 0
    samples: int = 40

    model_config = {"populate_by_name": True}


class CorpusRequest(BaseModel):
    name: str
    d: Optional[int] = None
    lam: Optional[str] = Field(default=None, alias="lambda")
    gamma: Optional[str] = None
    p: Optional[list[str]] = None

    model_config = {"populate_by_name": True}


class CommandResponse(BaseModel):
    command: str
    status: str
    exit_code: int
    inputs: dict
    result: dict
