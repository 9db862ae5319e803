"""The compute service: every library operation behind a POST endpoint.

All endpoints are stateless; domain errors surface as 400s with the violated
contract in the detail, so the thin CLI client can map them to exit code 1.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..field import (
    AdditiveCharacter,
    DomainError,
    Place,
    hilbert_symbol,
    psi_std,
    square_class,
    square_classes,
)
from .. import cocycle as C
from .. import integral as I
from .. import lfunc as L
from .. import realarch as R
from .. import symplectic as S
from ..verify import run_suite
from ..weil import gamma_psi, gamma_psi_bruteforce, weil_table
from . import models as M

app = FastAPI(
    title="metaplectic",
    version=__version__,
    description="Exact arithmetic for the metaplectic double cover of Sp(2n): "
                "Hilbert symbols, Weil factors, Rao's cocycle, local coefficients.",
)


def _fail(exc: Exception):
    raise HTTPException(status_code=400, detail=str(exc))


@app.get("/")
def root():
    return {
        "schema": M.SCHEMA_VERSION,
        "name": "metaplectic",
        "version": __version__,
        "endpoints": sorted(
            r.path for r in app.routes if r.path.startswith("/") and len(r.path) > 1
        ),
    }


@app.post("/hilbert", response_model=M.HilbertResponse, response_model_by_alias=True)
def hilbert(req: M.HilbertRequest):
    try:
        place = Place.parse(req.place)
        val = hilbert_symbol(M.parse_rational(req.a), M.parse_rational(req.b), place)
    except DomainError as exc:
        _fail(exc)
    return M.HilbertResponse(place=str(place), a=req.a, b=req.b, value=val)


@app.post("/weil", response_model=M.WeilResponse, response_model_by_alias=True)
def weil(req: M.WeilRequest):
    try:
        place = Place.parse(req.place)
        a = M.parse_rational(req.a)
        psi = AdditiveCharacter(M.parse_rational(req.psi_twist), place)
        root_val = gamma_psi(a, psi, place)
        cls = square_class(a, place)
        bf = None
        if req.bruteforce:
            if not psi.is_normalized:
                raise DomainError("brute force requires a normalized character")
            bf = M.complex_pair(gamma_psi_bruteforce(a, psi, place))
    except DomainError as exc:
        _fail(exc)
    return M.WeilResponse(
        place=str(place), square_class=str(cls), gamma=str(root_val),
        value=M.complex_pair(root_val.value()), bruteforce=bf)


def _parse_sp(rows: list[list[str]]) -> S.SymplecticMatrix:
    m = M.parse_matrix(rows)
    return S.SymplecticMatrix(len(m) // 2, m)


@app.post("/cocycle", response_model=M.CocycleResponse, response_model_by_alias=True)
def cocycle(req: M.CocycleRequest):
    try:
        place = Place.parse(req.place)
        if req.similitude:
            g = S.GSpMatrix.of(M.parse_matrix(req.g))
            h = S.GSpMatrix.of(M.parse_matrix(req.h))
            val = C.gsp_cocycle(g, h, place)
            trace = {"lambda_g": M.format_rational(g.lam),
                     "lambda_h": M.format_rational(h.lam)}
        else:
            g, h = _parse_sp(req.g), _parse_sp(req.h)
            trace = C.cocycle_trace(g, h, place)
            val = trace.pop("value")
    except DomainError as exc:
        _fail(exc)
    return M.CocycleResponse(place=str(place), value=val, trace=trace)


@app.post("/mp-mul", response_model=M.MpMulResponse, response_model_by_alias=True)
def mp_mul(req: M.MpMulRequest):
    try:
        place = Place.parse(req.place)
        if not req.elements:
            raise DomainError("empty element list")
        acc = None
        for elt in req.elements:
            x = C.MetaplecticElement(_parse_sp(elt.g), elt.eps)
            acc = x if acc is None else C.mp_mul(acc, x, place)
    except DomainError as exc:
        _fail(exc)
    return M.MpMulResponse(place=str(place), g=M.format_matrix(acc.g.rows), eps=acc.eps)


@app.post("/bruhat", response_model=M.BruhatResponse, response_model_by_alias=True)
def bruhat(req: M.BruhatRequest):
    try:
        place = Place.parse(req.place)
        g = _parse_sp(req.g)
        data = S.bruhat_factor(g)
        x_cls = square_class(data.x_rational, place)
    except DomainError as exc:
        _fail(exc)
    return M.BruhatResponse(
        p1=M.format_matrix(data.p1.rows), S=sorted(data.S),
        p2=M.format_matrix(data.p2.rows), x_class=str(x_cls),
        cell_index=len(data.S))


@app.post("/local-coef", response_model=M.LocalCoefResponse, response_model_by_alias=True)
def local_coef(req: M.LocalCoefRequest):
    s = complex(*req.s)
    try:
        place = Place.parse(req.place)
        if place.is_real:
            closed = R.sl2_localcoef_real(req.parity, req.a, req.b, s)
            lform = R.sl2_localcoef_real_L(req.parity, req.a, s, b=req.b)
            return M.LocalCoefResponse(
                place=str(place), s=req.s, closed=M.complex_pair(closed),
                gamma_form=M.complex_pair(lform),
                rel_error=abs(closed - lform) / max(abs(closed), 1e-300))
        if place.is_complex:
            raise DomainError("use parity-free complex form via /gamma instead")
        chi = req.char.build(place)
        psi = AdditiveCharacter(M.parse_rational(req.psi_twist), place)
        closed_val = integral_val = None
        rel = None
        decomposition = None
        if req.mode in ("closed", "both"):
            closed_val = L.sl2_localcoef_closed(chi, psi).eval_s(s)
        if req.mode in ("integral", "both"):
            integral_val = I.localcoef_integral(chi, psi, s, place)
            if req.emit_decomposition and psi.is_normalized:
                decomposition = I.localcoef_decompose(chi, psi, place).to_dict()
        if closed_val is not None and integral_val is not None:
            rel = abs(integral_val * closed_val - 1)
    except DomainError as exc:
        _fail(exc)
    return M.LocalCoefResponse(
        place=str(place), s=req.s,
        closed=M.complex_pair(closed_val) if closed_val is not None else None,
        integral=M.complex_pair(integral_val) if integral_val is not None else None,
        rel_error=rel, decomposition=decomposition)


@app.post("/gamma", response_model=M.GammaResponse, response_model_by_alias=True)
def gamma(req: M.GammaRequest):
    try:
        params = L.SatakeParams(tuple(complex(*p) for p in req.params)) \
            if req.params else L.SatakeParams(tuple())
        params_b = L.SatakeParams(tuple(complex(*p) for p in req.params_b)) \
            if req.params_b else L.SatakeParams(tuple())
        q = req.q
        if req.kind == "tate":
            if len(params.values) != 1:
                raise DomainError("tate gamma takes one parameter")
            out = L.tate_gamma_sym(q, params.values[0], req.shift, req.doubled)
        elif req.kind == "sym2":
            out = L.sym2_gamma(params, q)
        elif req.kind == "rankin":
            out = L.rankin_gamma(params, params_b, q, req.shift, req.doubled)
        elif req.kind == "metaplectic":
            out = L.metaplectic_gamma_ps(params_b, params, q)
        else:
            out = L.L_psi_sym(params_b, params, q, req.shift)
    except DomainError as exc:
        _fail(exc)
    d = out.to_dict()
    return M.GammaResponse(
        kind=req.kind, scalar=d["scalar"], degree=d["degree"],
        zeros=d["zeros"], poles=d["poles"], flagged=d["flagged"])


@app.post("/mellin", response_model=M.MellinResponse, response_model_by_alias=True)
def mellin(req: M.MellinRequest):
    s = complex(*req.s)
    try:
        place = Place.parse(req.place)
        chi = req.char.build(place)
        psi = psi_std(place)
        direct = None
        if req.kind == "tate":
            value = I.tate_gamma_integral(chi, psi, s)
        elif req.kind == "gamma-tilde":
            value = I.gamma_tilde_integral(chi, psi, s)
        elif req.kind == "zeta":
            phi = I.IndicatorFunction(req.indicator, req.n, M.parse_rational(req.a))
            value = I.zeta_mellin(phi, chi, s, place)
        else:
            phi = I.IndicatorFunction(req.indicator, req.n, M.parse_rational(req.a))
            y = M.parse_rational(req.y)
            value = I.phi_tilde(phi, y, psi, place)
            direct = M.complex_pair(I.phi_tilde_direct(phi, y, psi, place))
    except DomainError as exc:
        _fail(exc)
    return M.MellinResponse(place=str(place), kind=req.kind,
                            value=M.complex_pair(value), direct=direct)


@app.post("/reducibility", response_model=M.ReducibilityResponse, response_model_by_alias=True)
def reducibility(req: M.ReducibilityRequest):
    try:
        entries = [
            L.PrincipalSeriesEntry(
                value=complex(*e.value) if e.value is not None else
                (1.0 + 0j if e.quadratic_ramified else None),
                quadratic_ramified=e.quadratic_ramified)
            for e in req.entries
        ]
        res = L.reducibility_ps(entries, req.q)
    except DomainError as exc:
        _fail(exc)
    return M.ReducibilityResponse(verdict=res["verdict"], reflections=res["reflections"])


@app.post("/table", response_model=M.TableResponse, response_model_by_alias=True)
def table(req: M.TableRequest):
    try:
        place = Place.parse(req.place if req.kind != "q2-weil" else "q2")
        if req.kind in ("q2-weil", "weil"):
            tab = weil_table(place)
        else:
            tab = {str(i): str(c) for i, c in enumerate(square_classes(place))}
    except DomainError as exc:
        _fail(exc)
    return M.TableResponse(kind=req.kind, place=str(place), table=tab)


@app.post("/verify", response_model=M.VerifyResponse, response_model_by_alias=True)
def verify(req: M.VerifyRequest):
    try:
        rep = run_suite(req.suite, **req.params())
    except KeyError as exc:
        _fail(exc)
    d = rep.to_dict()
    return M.VerifyResponse(suite=d["suite"], passed=d["passed"],
                            elapsed=d["elapsed"], checks=d["checks"])
