"""
Pruebas de Gamma_{n,1}, los complementos normales N_{n,i}, los campos E_{n,i}
y las álgebras H_{n,i}
"""
import pytest
from hypothesis import given, strategies as st
from sympy import QQ

from models.cyclotomic import campo, zeta_power
from models.errores import NivelIncompatible, ParametroInvalido
from models.variants import (
    BigFieldElt, GammaElt, complement_generator, containment_check, contencion_esperada, fixed_field,
    fixed_field_check, galois_group, gamma_act, h_variant, h_variant_check, include,
    normal_complements, normal_complements_check, variant_action_check, variant_apply,
    variant_counit, variant_images_distinct, variant_nu, variant_nu_check, variant_nu_ring,
    variants_suite,
)


def gammas(p, n):
    f = campo(p, n)
    return st.builds(lambda s, e: GammaElt(p, n, s, e), st.integers(0, f.orden - 1), st.integers(0, f.phi - 1))


class TestGammaElt:
    def test_normaliza_residuos(self):
        g = GammaElt(3, 2, 10, 7)
        assert (g.s, g.e) == (1, 1)

    def test_composicion_no_conmutativa(self):
        s, d = GammaElt.sigma(3, 1), GammaElt.delta(3, 1)
        assert s * d == GammaElt(3, 1, 1, 1)
        assert d * s == GammaElt(3, 1, 2, 1)

    @given(gammas(3, 2), gammas(3, 2), gammas(3, 2))
    def test_asociativa(self, x, y, z):
        assert (x * y) * z == x * (y * z)

    @given(gammas(5, 1))
    def test_inversa(self, g):
        assert g * g.inversa() == GammaElt.identidad(5, 1)
        assert g.inversa() * g == GammaElt.identidad(5, 1)

    def test_ordenes(self):
        assert GammaElt.sigma(3, 2).orden() == 9
        assert GammaElt.beta(3, 2).orden() == 3
        assert GammaElt.delta(3, 2).orden() == 6

    def test_exponente_de_beta(self):
        assert GammaElt.desde_beta(3, 2, 4, 2).b == 2
        assert GammaElt.delta(3, 2).b is None

    def test_potencia_negativa(self):
        g = GammaElt(3, 2, 5, 1)
        assert g.potencia(-2) * g.potencia(2) == GammaElt.identidad(3, 2)

    def test_imagen_monomio(self):
        # delta: zeta -> zeta^2, w fijo
        assert GammaElt.delta(3, 1).imagen_monomio(1, 1) == (2, 1)
        assert GammaElt.sigma(3, 1).imagen_monomio(0, 2) == (2, 2)

    @given(gammas(3, 1), gammas(3, 1))
    def test_permutacion_es_morfismo(self, x, y):
        # sympy compone de izquierda a derecha
        assert (x * y).permutacion() == y.permutacion() * x.permutacion()

    def test_restriccion(self):
        g = GammaElt(3, 2, 4, 5).restringir()
        assert (g.n, g.s, g.e) == (1, 1, 1)
        with pytest.raises(ParametroInvalido):
            GammaElt.sigma(3, 1).restringir()

    def test_niveles_distintos(self):
        with pytest.raises(NivelIncompatible):
            GammaElt.sigma(3, 1) * GammaElt.sigma(3, 2)


class TestCampoGrande:
    def test_w_a_la_p_n(self):
        w = BigFieldElt.monomio(3, 1, 5, 0, 1)
        assert w * w * w == BigFieldElt.monomio(3, 1, 5, 0, 0, 5)

    def test_inclusion(self):
        w1 = BigFieldElt.monomio(3, 1, 2, 1, 1)
        assert include(w1, 2) == BigFieldElt.monomio(3, 2, 2, 3, 3)
        with pytest.raises(NivelIncompatible):
            include(w1, 3)

    def test_accion(self):
        w = BigFieldElt.monomio(3, 2, 2, 0, 1)
        z = BigFieldElt.monomio(3, 2, 2, 1, 0)
        assert gamma_act(GammaElt.sigma(3, 2), w) == BigFieldElt.monomio(3, 2, 2, 1, 1)
        assert gamma_act(GammaElt.delta(3, 2), z) == BigFieldElt.monomio(3, 2, 2, 2, 0)

    @given(gammas(3, 1), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
    def test_accion_multiplicativa(self, g, a1, b1, a2, b2):
        x = BigFieldElt.monomio(3, 1, 2, a1, b1)
        y = BigFieldElt.monomio(3, 1, 2, a2, b2)
        assert gamma_act(g, x * y) == gamma_act(g, x) * gamma_act(g, y)

    def test_vector(self):
        x = BigFieldElt.desde_ciclotomico(zeta_power(campo(3, 1), 1), 2, 2)
        assert x.vector() == [QQ(0), QQ(0), QQ(0), QQ(0), QQ(0), QQ(1)]
        assert BigFieldElt.desde_vector(3, 1, 2, x.vector()) == x

    def test_json(self):
        datos = BigFieldElt.monomio(3, 1, QQ(1, 2), 0, 1, QQ(-3)).to_json()
        assert datos['radicand'] == '1/2'
        assert datos['coeffs'] == [['0/1', '-3/1', '0/1'], ['0/1', '0/1', '0/1']]


class TestCamposFijos:
    def test_sin_generadores(self):
        assert len(fixed_field(3, 2, [])) == 54

    def test_sigma(self):
        base = fixed_field(3, 2, [GammaElt.sigma(3, 2)])
        assert len(base) == 6
        assert all(x.columnas[b].es_cero for x in base for b in range(1, 9))

    def test_todo_gamma(self):
        base = fixed_field(3, 2, [GammaElt.sigma(3, 2), GammaElt.delta(3, 2)])
        assert len(base) == 1

    @pytest.mark.parametrize("p, n", [(3, 2), (3, 3), (5, 2)])
    def test_grado_phi(self, p, n):
        reporte = fixed_field_check(p, n)
        assert reporte.paso
        assert set(reporte.detalle['dimensiones'].values()) == {campo(p, n).phi}


class TestComplementos:
    def test_generadores(self):
        assert complement_generator(3, 2, 0) == GammaElt.sigma(3, 2)
        assert complement_generator(3, 3, 2) == GammaElt.desde_beta(3, 3, 2, 3)

    def test_parametros(self):
        with pytest.raises(ParametroInvalido):
            complement_generator(3, 1, 0)
        with pytest.raises(ParametroInvalido):
            complement_generator(3, 2, 3)

    @pytest.mark.parametrize("p, n", [(3, 2), (3, 3), (5, 2)])
    def test_p_complementos(self, p, n):
        assert len(normal_complements(p, n)) == p
        reporte = normal_complements_check(p, n)
        assert reporte.paso
        assert reporte.detalle['cantidad'] == p
        assert reporte.detalle['orden_gamma'] == p ** (2 * n - 1)


class TestHVariante:
    @pytest.mark.parametrize("i", [0, 1, 2])
    def test_dimension(self, i):
        assert len(h_variant(3, 2, i)) == 18

    def test_reporte(self):
        reporte = h_variant_check(3, 2)
        assert reporte.paso
        assert reporte.detalle['dimensiones']['1'] == {'Q': 18, 'Q(zeta_1)': 9}

    def test_elementos_invariantes_por_beta(self):
        h = h_variant(3, 2, 1)[4]
        beta = GammaElt.beta(3, 2)
        x = BigFieldElt.monomio(3, 2, 2, 1, 2)
        # beta (h x) = (beta h)(beta x) y h es fijo por beta
        assert gamma_act(beta, variant_apply(h, x)) == variant_apply(h, gamma_act(beta, x))

    def test_counidad_en_K_prima(self):
        f = campo(3, 2)
        for h in h_variant(3, 2, 2):
            eps = variant_counit(h)
            assert all(c == 0 for col in eps.columnas for a, c in enumerate(col.coeffs)
                       if a % f.paso)

    @pytest.mark.parametrize("i", [0, 1, 2])
    def test_accion_hopf_galois(self, i):
        reporte = variant_action_check(3, 2, i)
        assert reporte.paso
        assert reporte.detalle['rango'] == 162
        assert reporte.detalle['dimension_campo_fijo'] == 2

    def test_accion_omitida_si_es_grande(self):
        reporte = variant_action_check(3, 3, 0)
        assert reporte.estado.value == 'skipped'

    def test_imagenes_distintas(self):
        reporte = variant_images_distinct(3, 2)
        assert reporte.paso
        assert set(reporte.detalle['rangos']) == {'0,1', '0,2', '1,2'}


class TestSistemaInverso:
    def test_generador(self):
        g = complement_generator(3, 3, 1)
        assert variant_nu(3, 3, 1, g) == complement_generator(3, 2, 1)

    def test_nivel_minimo(self):
        with pytest.raises(ParametroInvalido):
            variant_nu(3, 2, 0, GammaElt.sigma(3, 2))

    def test_fuera_del_complemento(self):
        with pytest.raises(ParametroInvalido):
            variant_nu(3, 3, 0, GammaElt.beta(3, 3))

    def test_anillo(self):
        assert variant_nu_ring(3, 3, 1, {0: 1, 9: 2, 4: QQ(1, 2)}) == {0: QQ(3), 4: QQ(1, 2)}

    def test_reporte(self):
        reporte = variant_nu_check(3, 3)
        assert reporte.paso
        assert reporte.detalle['coincide_con_restriccion'] == {'0': True, '1': False, '2': False}


class TestContencion:
    @pytest.mark.parametrize("i, j, esperado", [(0, 0, True), (0, 1, True), (1, 1, False)])
    def test_nivel_3(self, i, j, esperado):
        contenido, reporte = containment_check(3, 3, i, j)
        assert contenido is esperado
        assert reporte.paso
        assert reporte.detalle['dimension_menor'] == 6

    @pytest.mark.parametrize("i, j", [(0, 2), (1, 2), (2, 1)])
    def test_tabla_esperada(self, i, j):
        contenido, reporte = containment_check(3, 3, i, j)
        assert contenido is contencion_esperada(i, j)
        assert reporte.detalle['esperado'] is contenido

    def test_expectativa_contraria_falla(self):
        contenido, reporte = containment_check(3, 3, 1, 1, esperado=True)
        assert not contenido
        assert not reporte.paso
        assert reporte.witness['contenido'] is False
        assert reporte.witness['elemento_no_fijo'] is not None

    def test_contenido_con_expectativa_contraria(self):
        _, reporte = containment_check(3, 3, 0, 1, esperado=False)
        assert not reporte.paso
        assert reporte.witness['elemento_no_fijo'] is None

    def test_nivel_2_con_i_no_nulo(self):
        with pytest.raises(ParametroInvalido):
            containment_check(3, 2, 1, 1)


class TestGrupoDeGalois:
    def test_sobre_Q(self):
        gamma, delta = galois_group(3, 2, 0)
        assert gamma == [GammaElt.sigma(3, 2), GammaElt.delta(3, 2)]
        assert delta == [GammaElt.delta(3, 2)]

    def test_sobre_Q_zeta_1(self):
        _, delta = galois_group(3, 2, 1)
        assert delta == [GammaElt(3, 2, 0, 2)]

    def test_r_invalido(self):
        with pytest.raises(ParametroInvalido):
            galois_group(3, 2, 3)


def test_suite_3_2():
    reportes = variants_suite(3, 2)
    assert all(r.paso for r in reportes)
    assert len(reportes) == 3 + 3 + 1
