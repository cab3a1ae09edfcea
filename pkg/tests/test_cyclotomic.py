"""
Pruebas de la aritmética en Q(zeta_{p^n})
"""
import pytest
from hypothesis import given, strategies as st
from sympy import QQ

from models.cyclotomic import (
    CycloElt, add, axioms_check, campo, delta_apply, embed, galois_matrix, galois_orbit, inverse,
    mul, norm, primitive_root, reduce, scale, trace, unit_apply, zeta_power,
)
from models.errores import DivisionPorCero, NivelIncompatible, ParametroInvalido

racionales = st.fractions(min_value=-6, max_value=6, max_denominator=4).map(
    lambda f: QQ(f.numerator, f.denominator))


def elementos(p, n):
    f = campo(p, n)
    return st.lists(racionales, min_size=f.phi, max_size=f.phi).map(lambda v: CycloElt(f, tuple(v)))


def vec(*valores):
    return tuple(QQ(v) for v in valores)


class TestPrimitiveRoot:
    @pytest.mark.parametrize("p, esperado", [(3, 2), (5, 2), (7, 3)])
    def test_menor_raiz_primitiva(self, p, esperado):
        assert primitive_root(p) == esperado

    @pytest.mark.parametrize("p", [2, 4, 9, 1, 0, -3])
    def test_rechaza_no_primos_impares(self, p):
        with pytest.raises(ParametroInvalido):
            primitive_root(p)

    def test_descriptor(self):
        f = campo(3, 2)
        assert (f.p, f.n, f.phi, f.pi, f.orden, f.paso) == (3, 2, 6, 2, 9, 3)


class TestReduce:
    def test_zeta_cuadrado_en_q_zeta_3(self):
        assert reduce(3, 1, [0, 0, 1]).coeffs == vec(-1, -1)

    def test_identidad(self):
        assert reduce(3, 1, [1, 0, 0]).coeffs == vec(1, 0)

    def test_zeta_9_a_la_sexta(self):
        raw = [0] * 9
        raw[6] = 1
        assert reduce(3, 2, raw).coeffs == vec(-1, 0, 0, -1, 0, 0)

    def test_exponentes_modulo_p_n(self):
        assert zeta_power(campo(3, 2), 9) == CycloElt.uno(campo(3, 2))
        assert zeta_power(campo(3, 2), -1) == zeta_power(campo(3, 2), 8)


class TestMultiplicacion:
    def test_zeta_por_zeta(self):
        f = campo(3, 1)
        assert mul(zeta_power(f, 1), zeta_power(f, 1)).coeffs == vec(-1, -1)

    def test_inverso_de_zeta(self):
        f = campo(3, 1)
        assert inverse(zeta_power(f, 1)).coeffs == vec(-1, -1)

    def test_inverso_de_cero(self):
        with pytest.raises(DivisionPorCero):
            inverse(CycloElt.cero(campo(5, 1)))

    def test_campos_distintos(self):
        with pytest.raises(NivelIncompatible):
            mul(CycloElt.uno(campo(3, 1)), CycloElt.uno(campo(3, 2)))

    @given(elementos(3, 2))
    def test_inverso(self, x):
        if not x.es_cero:
            assert mul(x, inverse(x)) == CycloElt.uno(x.field)

    @given(elementos(5, 1), elementos(5, 1), elementos(5, 1))
    def test_distributiva(self, x, y, z):
        assert mul(x, add(y, z)) == add(mul(x, y), mul(x, z))

    @given(elementos(3, 2), elementos(3, 2))
    def test_conmutativa(self, x, y):
        assert x * y == y * x


class TestGalois:
    def test_delta_sobre_zeta(self):
        f = campo(3, 1)
        assert delta_apply(1, zeta_power(f, 1)) == zeta_power(f, 2)

    def test_delta_es_trivial_a_la_phi(self):
        f = campo(7, 1)
        z = zeta_power(f, 1)
        assert delta_apply(f.phi, z) == z
        assert delta_apply(-1, delta_apply(1, z)) == z

    @given(elementos(3, 2), elementos(3, 2), st.integers(0, 5))
    def test_delta_es_automorfismo(self, x, y, e):
        assert delta_apply(e, x * y) == delta_apply(e, x) * delta_apply(e, y)

    def test_unit_apply_coincide_con_delta(self):
        f = campo(5, 1)
        x = CycloElt(f, vec(1, 2, 0, -1))
        assert unit_apply(f.unidad(3), x) == delta_apply(3, x)

    def test_unit_apply_rechaza_no_unidades(self):
        with pytest.raises(ParametroInvalido):
            unit_apply(3, CycloElt.uno(campo(3, 1)))

    def test_orbita(self):
        orbita = galois_orbit(zeta_power(campo(5, 1), 1))
        assert len({x.coeffs for x in orbita}) == 4

    def test_matriz_de_galois(self):
        f = campo(3, 1)
        # delta(1) = 1, delta(zeta) = zeta^2 = -1 - zeta
        assert galois_matrix(f, 1) == [[QQ(1), QQ(-1)], [QQ(0), QQ(-1)]]


class TestTrazaNorma:
    def test_traza_de_zeta(self):
        assert trace(zeta_power(campo(5, 1), 1)) == -1
        assert trace(zeta_power(campo(3, 2), 1)) == 0

    def test_norma_racional(self):
        f = campo(3, 1)
        assert norm(CycloElt.racional(f, 2)) == 4
        # N(1 - zeta_3) = 3
        assert norm(CycloElt(f, vec(1, -1))) == 3

    @given(elementos(3, 1))
    def test_escalar(self, x):
        assert scale(2, x) == add(x, x)


class TestEmbed:
    def test_zeta_m_a_potencia(self):
        assert embed(1, 2, zeta_power(campo(3, 1), 1)) == zeta_power(campo(3, 2), 3)

    def test_nivel_incorrecto(self):
        with pytest.raises(NivelIncompatible):
            embed(2, 3, zeta_power(campo(3, 1), 1))
        with pytest.raises(ParametroInvalido):
            embed(2, 1, zeta_power(campo(3, 2), 1))

    @given(elementos(3, 1), elementos(3, 1))
    def test_homomorfismo(self, x, y):
        assert embed(1, 3, x * y) == embed(1, 3, x) * embed(1, 3, y)


class TestJson:
    def test_formato_num_den(self):
        f = campo(3, 1)
        x = CycloElt(f, (QQ(1, 3), QQ(-2)))
        assert x.to_json() == ['1/3', '-2/1']
        assert CycloElt.from_json(f, x.to_json()) == x


@pytest.mark.parametrize("p, n", [(3, 1), (3, 2), (5, 1), (7, 1)])
def test_reporte_de_axiomas(p, n):
    assert axioms_check(p, n, semilla=7).paso
