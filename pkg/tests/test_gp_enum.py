"""
Pruebas de la enumeración de subgrupos regulares normalizados
"""
import pytest
from hypothesis import given, strategies as st
from sympy.combinatorics import PermutationGroup

from models.errores import CapExcedido, ParametroInvalido, SubgrupoInvalido
from models.gp_enum import (
    FiniteGroup, almost_classical, automorfismos, catalogo, census, compose, conteos_esperados,
    _tipo_ciclos, coset_action, cycle_type, enumerate_regular_normalized, grupos_desde_json, identity,
    inverse, is_regular, lambda_group, normalizes, radical_galois_group, verificar_cap,
)

C3 = FiniteGroup(3, ((1, 2, 0),))
S3 = FiniteGroup(3, ((1, 2, 0), (1, 0, 2)))
TRASPOSICION = FiniteGroup(3, ((1, 0, 2),))

permutaciones_5 = st.permutations(list(range(5))).map(tuple)


class TestPermutaciones:
    def test_composicion(self):
        f, g = (1, 2, 0), (1, 0, 2)
        assert compose(f, g) == (2, 1, 0)

    @given(permutaciones_5)
    def test_inversa(self, f):
        assert compose(f, inverse(f)) == identity(5)

    def test_tipo_de_ciclos(self):
        assert cycle_type((1, 0, 3, 4, 2)) == (2, 3)
        assert cycle_type((0, 2, 1)) == (1, 2)

    @given(permutaciones_5)
    def test_tipo_de_ciclos_sin_sympy(self, f):
        assert _tipo_ciclos(f) == cycle_type(f)

    def test_no_permutacion(self):
        with pytest.raises(ParametroInvalido):
            FiniteGroup(3, ((0, 0, 1),))


class TestGrupos:
    def test_orden(self):
        assert S3.orden == 6
        assert (2, 0, 1) in C3
        assert (1, 0, 2) not in C3

    def test_grupo_de_sympy(self):
        assert isinstance(S3.grupo, PermutationGroup)
        assert S3.grupo.is_transitive()
        assert len(S3.elements) == S3.orden

    def test_sin_generadores(self):
        trivial = FiniteGroup(4, ())
        assert trivial.elements == (identity(4),)

    def test_subgrupo(self):
        assert TRASPOSICION.es_subgrupo_de(S3)
        assert not TRASPOSICION.es_subgrupo_de(C3)

    def test_regular(self):
        assert is_regular(C3, 3)
        assert not is_regular(TRASPOSICION, 3)
        assert not is_regular(S3, 3)

    def test_normaliza(self):
        assert normalizes(S3, C3)
        assert not normalizes(S3, TRASPOSICION)


class TestCoclases:
    def test_tamano_y_punto_base(self):
        tamano, lam = coset_action(S3, TRASPOSICION)
        assert tamano == 3
        # Delta fija la coclase Delta
        assert lam((1, 0, 2))[0] == 0
        assert lam(identity(3)) == identity(3)

    def test_accion_es_morfismo(self):
        _, lam = coset_action(S3, TRASPOSICION)
        for f in S3.elements:
            for g in S3.elements:
                assert lam(compose(f, g)) == compose(lam(f), lam(g))

    def test_lambda_de_s3_es_s3(self):
        assert lambda_group(S3, TRASPOSICION).orden == 6

    def test_no_subgrupo(self):
        with pytest.raises(SubgrupoInvalido):
            coset_action(C3, TRASPOSICION)


class TestCatalogo:
    @pytest.mark.parametrize("m, cantidad", [(1, 1), (4, 2), (6, 2), (8, 5), (9, 2), (12, 5), (27, 5)])
    def test_cantidad(self, m, cantidad):
        assert len(catalogo(m)) == cantidad

    def test_ciclicos(self):
        assert [T.es_ciclico for T in catalogo(9)] == [True, False]

    def test_nombres(self):
        assert [T.nombre for T in catalogo(6)] == ["C3 x C2", "D3"]
        assert "A4" in [T.nombre for T in catalogo(12)]
        assert "D4" in [T.nombre for T in catalogo(8)]

    def test_automorfismos(self):
        ciclico, klein = catalogo(4)
        assert len(automorfismos(ciclico)) == 2
        assert len(automorfismos(klein)) == 6


class TestCap:
    def test_16_excede(self):
        with pytest.raises(CapExcedido) as exc:
            verificar_cap(16)
        assert exc.value.cap == 15

    @pytest.mark.parametrize("tamano", [15, 25, 27])
    def test_dentro_del_cap(self, tamano):
        verificar_cap(tamano)

    def test_potencia_par(self):
        with pytest.raises(CapExcedido):
            verificar_cap(32, cap_generico=15, cap_potencia_primo=64)


class TestEnumeracion:
    def test_s3_sobre_tres_puntos(self):
        # S3/C2: solo lambda(C3) y rho(C3), que aquí coinciden
        estructuras = enumerate_regular_normalized(S3, TRASPOSICION)
        assert len(estructuras) == 1
        assert estructuras[0].cyclic
        assert estructuras[0].almost_classical

    def test_galois_ciclico(self):
        # Gamma = C3 sobre sí mismo: S = Gamma
        estructuras = enumerate_regular_normalized(C3, FiniteGroup(3, (identity(3),)))
        assert len(estructuras) == 1

    def test_json(self):
        datos = enumerate_regular_normalized(S3, TRASPOSICION)[0].to_json()
        assert datos['regular'] and datos['normalized']
        assert len(datos['elements']) == 3

    def test_complementos_de_s3(self):
        complementos = almost_classical(S3, TRASPOSICION)
        assert [M.orden for M in complementos] == [3]

    def test_complemento_en_ciclico(self):
        c6 = FiniteGroup(6, ((1, 2, 3, 4, 5, 0),))
        c2 = FiniteGroup(6, ((3, 4, 5, 0, 1, 2),))
        complementos = almost_classical(c6, c2)
        assert len(complementos) == 1
        assert complementos[0].elements == ((0, 1, 2, 3, 4, 5), (2, 3, 4, 5, 0, 1), (4, 5, 0, 1, 2, 3))


class TestCenso:
    @pytest.mark.parametrize("p, n, r, total, clasicas", [
        (3, 1, 0, 1, 1),
        (3, 2, 0, 1, 1),
        (3, 2, 1, 3, 3),
        (3, 2, 2, 3, 1),
    ])
    def test_conteos(self, p, n, r, total, clasicas):
        assert conteos_esperados(p, n, r) == (total, clasicas)
        estructuras, reporte = census(p, n, r)
        assert reporte.paso
        assert len(estructuras) == total
        assert sum(s.almost_classical for s in estructuras) == clasicas

    def test_grupo_de_galois(self):
        Gamma, Delta = radical_galois_group(3, 2, 0)
        assert (Gamma.orden, Delta.orden) == (54, 6)
        assert Gamma.grado == 81

    def test_r_igual_n_es_ciclico(self):
        estructuras, reporte = census(3, 2, 2)
        assert reporte.detalle['tipos'] == ['C9']

    def test_cap_excedido(self):
        with pytest.raises(CapExcedido):
            census(3, 3, 1, cap_potencia_primo=9)


class TestJson:
    def test_grupos(self):
        Gamma, Delta = grupos_desde_json({'gamma': [[1, 2, 0], [1, 0, 2]], 'delta': [[1, 0, 2]]})
        assert Gamma.orden == 6 and Delta.orden == 2

    def test_delta_vacio(self):
        _, Delta = grupos_desde_json({'gamma': [[1, 2, 0]]})
        assert Delta.orden == 1

    @pytest.mark.parametrize("datos", [{}, {'gamma': []}, {'gamma': [[0, 0]]}, {'gamma': 5}])
    def test_invalidos(self, datos):
        with pytest.raises(ParametroInvalido):
            grupos_desde_json(datos)
