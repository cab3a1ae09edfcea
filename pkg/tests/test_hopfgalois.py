"""
Pruebas de H_n en la base e_{n,i}, su dualidad con Q N_n y su acción sobre Q(w_n)
"""
import pytest
from hypothesis import given, strategies as st
from sympy import QQ

from models.cyclotomic import CycloElt, campo, zeta_power
from models.errores import DivisionPorCero, NivelIncompatible, ParametroInvalido
from models.groupring import GroupRingElt, gr_add, sigma_power
from models.hopfgalois import (
    HElt, RadicalElt, act, base_change_check, base_change_sigma, coordenadas_h, dual_pairing,
    dual_pairing_check, e_basis, e_base_completa, fixed_field_check, fixed_ring_check, h_antipode,
    h_comul, h_counit, h_counit_elt, hopf_axioms_check, measuring_check, orthogonality_check,
)

INSTANCIAS = [(3, 1), (3, 2), (5, 1), (7, 1), (3, 3)]

racionales = st.integers(-5, 5).map(QQ)


def vec(*valores):
    return tuple(QQ(v) for v in valores)


class TestBaseE:
    def test_e_0_racional(self):
        e = e_basis(3, 1, 0)
        assert all(c.coeffs == vec(QQ(1, 3), 0) for c in e.coeffs)

    def test_e_1(self):
        e = e_basis(3, 1, 1)
        assert e.coeffs[0].coeffs == (QQ(1, 3), QQ(0))
        assert e.coeffs[1].coeffs == (QQ(-1, 3), QQ(-1, 3))
        assert e.coeffs[2].coeffs == (QQ(0), QQ(1, 3))

    @pytest.mark.parametrize("p, n", [(3, 1), (3, 2), (5, 1)])
    def test_suma_es_uno(self, p, n):
        f = campo(p, n)
        total = GroupRingElt.cero(f)
        for e in e_base_completa(p, n):
            total = gr_add(total, e)
        assert total == GroupRingElt.uno(f)

    def test_indice_fuera_de_rango(self):
        with pytest.raises(ParametroInvalido):
            e_basis(3, 1, 3)


class TestDualidad:
    def test_valores(self):
        assert dual_pairing(2, 2, 3, 1) == 1
        assert dual_pairing(0, 1, 3, 1) == 0

    def test_matriz_identidad_3_2(self):
        matriz = [[dual_pairing(i, k, 3, 2) for k in range(9)] for i in range(9)]
        assert matriz == [[QQ(1) if i == k else QQ(0) for k in range(9)] for i in range(9)]

    @pytest.mark.parametrize("p, n", INSTANCIAS)
    def test_reporte(self, p, n):
        assert dual_pairing_check(p, n).paso


class TestHopf:
    def test_comultiplicacion(self):
        assert set(h_comul(0, 3, 1)) == {(0, 0), (1, 2), (2, 1)}

    def test_counidad_y_antipoda(self):
        assert h_counit(0) == 1 and h_counit(1) == 0
        assert h_antipode(1, 3, 2) == 8

    @pytest.mark.parametrize("p, n", INSTANCIAS)
    def test_axiomas(self, p, n):
        assert hopf_axioms_check(p, n).paso

    @pytest.mark.parametrize("p, n", [(3, 1), (3, 2), (5, 1), (3, 3)])
    def test_ortogonalidad(self, p, n):
        reporte = orthogonality_check(p, n)
        assert reporte.paso
        assert reporte.detalle['metodo'] == ('producto' if p ** n <= 9 else 'caracteres')


class TestHElt:
    @given(st.lists(racionales, min_size=9, max_size=9), st.lists(racionales, min_size=9, max_size=9))
    def test_producto_coordenada_a_coordenada(self, x, y):
        h, g = HElt.desde_lista(3, 2, x), HElt.desde_lista(3, 2, y)
        assert (h * g).coords == tuple(a * b for a, b in zip(x, y))

    def test_ida_y_vuelta_por_el_anillo_de_grupo(self):
        h = HElt.desde_lista(3, 1, [1, QQ(-2, 3), 5])
        assert HElt.from_groupring(h.to_groupring()) == h

    def test_elemento_fuera_de_H(self):
        f = campo(3, 1)
        x = sigma_power(f, 1)
        assert coordenadas_h(x) is None
        with pytest.raises(ParametroInvalido):
            HElt.from_groupring(x)

    def test_sigma_con_coeficiente_racional_esta_fuera(self):
        # sigma = sum zeta^i e_i no tiene coordenadas racionales
        f = campo(5, 1)
        assert coordenadas_h(sigma_power(f, 2)) is None

    def test_counidad(self):
        assert h_counit_elt(HElt.desde_lista(3, 1, [4, 1, 1])) == 4

    def test_json(self):
        h = HElt.desde_lista(3, 1, [QQ(1, 2), 0, -1])
        assert h.to_json() == ['1/2', '0/1', '-1/1']
        assert HElt.from_json(3, 1, h.to_json()) == h


class TestAccion:
    def test_proyecciones(self):
        w = RadicalElt.w_power(3, 1, 2, 1)
        w2 = RadicalElt.w_power(3, 1, 2, 2)
        e1 = HElt.base(3, 1, 1)
        assert act(e1, w) == w
        assert act(e1, w2) == RadicalElt.desde_lista(3, 1, 2, [0, 0, 0])

    @given(st.lists(racionales, min_size=3, max_size=3))
    def test_particion_de_la_unidad(self, coords):
        x = RadicalElt.desde_lista(3, 1, 2, coords)
        assert act(HElt.uno(3, 1), x) == x

    def test_vuelta_del_radical(self):
        w2 = RadicalElt.w_power(3, 1, 5, 2)
        assert (w2 * w2).coords == vec(0, 5, 0)

    def test_niveles_distintos(self):
        with pytest.raises(NivelIncompatible):
            act(HElt.base(3, 2, 0), RadicalElt.w_power(3, 1, 2, 0))

    @pytest.mark.parametrize("p, n", [(3, 1), (3, 2), (5, 1)])
    def test_measuring(self, p, n):
        reporte = measuring_check(p, n, 2)
        assert reporte.paso
        assert reporte.detalle['triples'] == p ** (3 * n)

    def test_radicando_potencia(self):
        with pytest.raises(ParametroInvalido):
            measuring_check(3, 1, 8)
        with pytest.raises(DivisionPorCero):
            measuring_check(3, 1, 0)

    @pytest.mark.parametrize("p, n", INSTANCIAS)
    def test_campo_fijo_es_Q(self, p, n):
        reporte = fixed_field_check(p, n, QQ(2))
        assert reporte.paso
        assert reporte.detalle['dimension'] == 1


class TestCambioDeBase:
    @pytest.mark.parametrize("p, n, m", [(3, 2, 1), (3, 3, 1), (3, 3, 2), (5, 2, 1)])
    def test_sigma_potencia(self, p, n, m):
        coefs, ok = base_change_sigma(p, n, m)
        assert ok
        assert coefs[1] == zeta_power(campo(p, n), p ** (n - m))
        assert base_change_check(p, n, m).paso

    def test_m_invalido(self):
        with pytest.raises(ParametroInvalido):
            base_change_sigma(3, 2, 2)


class TestAnilloFijo:
    @pytest.mark.parametrize("p, n", INSTANCIAS)
    def test_coincide_con_span_de_e(self, p, n):
        reporte = fixed_ring_check(p, n)
        assert reporte.paso
        assert reporte.detalle['dimension'] == p ** n

    def test_metodo_por_tamano(self):
        detalle = fixed_ring_check(3, 3).detalle
        assert detalle['metodo'] == 'rango de la union'
        assert detalle['dimension_ambiente'] == 486


def test_coeficientes_de_e_son_ciclotomicos():
    e = e_basis(5, 1, 2)
    assert all(isinstance(c, CycloElt) for c in e.coeffs)
