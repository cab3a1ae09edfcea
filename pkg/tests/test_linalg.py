"""
Pruebas del álgebra lineal exacta
"""
from hypothesis import given, strategies as st
from sympy import QQ

from utils.linalg import en_span, mismo_span, nucleo, nucleo_disperso, rango


def producto_por_vector(entradas, v):
    return {i: sum((c * v[j] for j, c in fila.items()), QQ(0)) for i, fila in entradas.items()}


class TestNucleoDisperso:
    def test_dos_bloques_y_una_columna_libre(self):
        # x0 - x1 = 0, x2 + x3 = 0; x4 no aparece
        entradas = {0: {0: QQ(1), 1: QQ(-1)}, 1: {2: QQ(1), 3: QQ(1)}}
        base = nucleo_disperso(entradas, (2, 5))
        assert len(base) == 3
        assert [QQ(0), QQ(0), QQ(0), QQ(0), QQ(1)] in base
        assert all(all(c == 0 for c in producto_por_vector(entradas, v).values()) for v in base)

    def test_bloque_de_rango_completo(self):
        entradas = {0: {0: QQ(1), 1: QQ(1)}, 1: {0: QQ(1), 1: QQ(-1)}}
        assert nucleo_disperso(entradas, (2, 2)) == []

    def test_matriz_nula(self):
        assert len(nucleo_disperso({0: {1: QQ(0)}}, (1, 3))) == 3

    @given(st.dictionaries(st.integers(0, 5),
                           st.dictionaries(st.integers(0, 7), st.integers(-2, 2), max_size=3),
                           max_size=6))
    def test_coincide_con_el_nucleo_denso(self, entradas):
        entradas = {i: {j: QQ(v) for j, v in fila.items()} for i, fila in entradas.items()}
        densas = [[entradas.get(i, {}).get(j, QQ(0)) for j in range(8)] for i in range(6)]
        disperso = nucleo_disperso(entradas, (6, 8))
        assert len(disperso) == 8 - rango(densas, 8)
        assert mismo_span(disperso, nucleo(densas, 8), 8)


def test_en_span():
    base = [[QQ(1), QQ(0), QQ(1)], [QQ(0), QQ(1), QQ(0)]]
    assert en_span(base, [QQ(2), QQ(3), QQ(2)], 3)
    assert not en_span(base, [QQ(1), QQ(0), QQ(0)], 3)
