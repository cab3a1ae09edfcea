"""
Pruebas del anillo de grupo Q(zeta_n)[N_n] y de su anillo fijo
"""
import pytest
from hypothesis import given, strategies as st
from sympy import QQ

from models.cyclotomic import CycloElt, campo, zeta_power
from models.errores import NivelIncompatible, ParametroInvalido
from models.groupring import (
    GroupRingElt, character, diag_action, diag_action_unit, embed_coefficients, es_fijo,
    fixed_ring, fixed_ring_dense, gr_add, gr_antipode, gr_comul, gr_counit, gr_mul, gr_scale,
    hopf_axioms_check, sigma_power,
)
from utils.linalg import mismo_span

racionales = st.integers(-4, 4).map(QQ)


def elementos_grupo(p, n):
    f = campo(p, n)
    coef = st.lists(racionales, min_size=f.phi, max_size=f.phi).map(lambda v: CycloElt(f, tuple(v)))
    return st.lists(coef, min_size=f.orden, max_size=f.orden).map(lambda cs: GroupRingElt(f, n, tuple(cs)))


class TestEstructura:
    def test_sigma_potencias(self):
        f = campo(3, 1)
        assert sigma_power(f, 1) * sigma_power(f, 2) == GroupRingElt.uno(f)

    def test_longitud_invalida(self):
        f = campo(3, 1)
        with pytest.raises(ParametroInvalido):
            GroupRingElt(f, 1, (CycloElt.uno(f),))

    def test_niveles_distintos(self):
        with pytest.raises(NivelIncompatible):
            gr_add(GroupRingElt.uno(campo(3, 1)), GroupRingElt.uno(campo(3, 2)))

    @given(elementos_grupo(3, 1), elementos_grupo(3, 1), elementos_grupo(3, 1))
    def test_asociativa(self, x, y, z):
        assert gr_mul(gr_mul(x, y), z) == gr_mul(x, gr_mul(y, z))

    def test_escalar_ciclotomico(self):
        f = campo(3, 1)
        z = zeta_power(f, 1)
        assert gr_scale(z, sigma_power(f, 1)).coeffs[1] == z


class TestHopf:
    def test_comultiplicacion_de_elemento_de_grupo(self):
        f = campo(3, 1)
        d = gr_comul(sigma_power(f, 2))
        assert d.terminos == {(2, 2): CycloElt.uno(f)}

    def test_counidad_y_antipoda(self):
        f = campo(5, 1)
        x = gr_add(sigma_power(f, 1), gr_scale(3, sigma_power(f, 4)))
        assert gr_counit(x) == CycloElt.racional(f, 4)
        assert gr_antipode(x) == gr_add(sigma_power(f, 4), gr_scale(3, sigma_power(f, 1)))

    @pytest.mark.parametrize("p, n", [(3, 1), (3, 2), (5, 1)])
    def test_reporte(self, p, n):
        assert hopf_axioms_check(p, n, semilla=3).paso


class TestAccionDiagonal:
    def test_sigma_va_a_sigma_pi(self):
        f = campo(3, 2)
        assert diag_action(1, sigma_power(f, 1)) == sigma_power(f, 2)

    def test_unidad_no_invertible(self):
        with pytest.raises(ParametroInvalido):
            diag_action_unit(5, GroupRingElt.uno(campo(5, 1)))

    @given(elementos_grupo(3, 1), elementos_grupo(3, 1))
    def test_es_morfismo_de_anillos(self, x, y):
        assert diag_action(1, gr_mul(x, y)) == gr_mul(diag_action(1, x), diag_action(1, y))

    def test_orden_phi(self):
        f = campo(5, 1)
        x = gr_scale(zeta_power(f, 1), sigma_power(f, 2))
        assert diag_action(f.phi, x) == x


class TestCaracter:
    def test_sigma_k(self):
        f = campo(3, 2)
        assert character(2, sigma_power(f, 4)) == zeta_power(f, 8)

    def test_grupo_menor_con_coeficientes_mayores(self):
        f = campo(3, 2)
        x = embed_coefficients(sigma_power(campo(3, 1), 1), 2)
        # chi_1(sigma) con sigma en N_1: zeta_1 = zeta_2^3
        assert character(1, x) == zeta_power(f, 3)

    def test_coeficientes_insuficientes(self):
        f = campo(3, 1)
        x = GroupRingElt(f, 2, tuple(CycloElt.uno(f) for _ in range(9)))
        with pytest.raises(NivelIncompatible):
            character(0, x)


class TestAnilloFijo:
    @pytest.mark.parametrize("p, n", [(3, 1), (3, 2), (5, 1), (7, 1)])
    def test_dimension(self, p, n):
        base = fixed_ring(p, n)
        assert len(base) == p ** n
        assert all(es_fijo(x) for x in base)

    @pytest.mark.parametrize("p, n", [(3, 1), (3, 2), (5, 1)])
    def test_bloques_igual_a_eliminacion_completa(self, p, n):
        f = campo(p, n)
        bloques = [x.vector() for x in fixed_ring(p, n)]
        denso = [x.vector() for x in fixed_ring_dense(p, n)]
        assert mismo_span(bloques, denso, f.phi * f.orden)

    def test_elementos_no_fijos(self):
        f = campo(3, 1)
        assert not es_fijo(sigma_power(f, 1))
        assert es_fijo(gr_add(sigma_power(f, 1), sigma_power(f, 2)))
