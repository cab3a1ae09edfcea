"""
El álgebra de Hopf H_n en su base de idempotentes e_{n,i}, su estructura
de Hopf, su acción sobre Q(w_n) con w_n = a^{1/p^n}, la dualidad con
(Q N_n)^* y el cambio de base parcial a Q(zeta_m).
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy import QQ

from models.cyclotomic import (
    CycloElt, FieldDescriptor, campo, embed, reduce, zeta_power, mul as cmul,
)
from models.errores import NivelIncompatible, ParametroInvalido
from models.groupring import (
    GroupRingElt, character, diag_action, embed_coefficients, fixed_ring, gr_add, gr_comul,
    gr_mul, gr_scale, sigma_power, TensorElt,
)
from models.reporte import Reporte, inicio_cronometro
from utils.helpers import (
    Rat, rat, format_rat, parse_rat, validar_indice, validar_nivel, validar_primo_impar,
    validar_radicando,
)
from utils.linalg import nucleo, rango

logger = logging.getLogger(__name__)

# Por encima de esta dimensión sobre Q la igualdad de spans se certifica con caracteres
DIM_RANGO_DIRECTO = 500


def e_basis(p: int, n: int, i: int) -> GroupRingElt:
    """e_{n,i} = (1/p^n) sum_j zeta^{-ij} sigma^j"""
    f = campo(p, n)
    validar_indice(i, f.orden)
    escala = QQ(1, f.orden)
    coeffs = []
    for j in range(f.orden):
        raw = [QQ(0)] * f.orden
        raw[(-i * j) % f.orden] = escala
        coeffs.append(reduce(p, n, raw))
    return GroupRingElt(f, n, tuple(coeffs))


def e_base_completa(p: int, n: int) -> List[GroupRingElt]:
    return [e_basis(p, n, i) for i in range(p ** n)]


@dataclass(frozen=True)
class HElt:
    field: FieldDescriptor
    coords: Tuple[Rat, ...]

    def __post_init__(self):
        if len(self.coords) != self.field.orden:
            raise ParametroInvalido(
                f"Se esperaban {self.field.orden} coordenadas, hay {len(self.coords)}")

    @staticmethod
    def base(p: int, n: int, i: int) -> 'HElt':
        f = campo(p, n)
        validar_indice(i, f.orden)
        return HElt(f, tuple(QQ(1) if k == i else QQ(0) for k in range(f.orden)))

    @staticmethod
    def uno(p: int, n: int) -> 'HElt':
        f = campo(p, n)
        return HElt(f, (QQ(1),) * f.orden)

    @staticmethod
    def cero(p: int, n: int) -> 'HElt':
        f = campo(p, n)
        return HElt(f, (QQ(0),) * f.orden)

    @staticmethod
    def desde_lista(p: int, n: int, valores: Sequence) -> 'HElt':
        return HElt(campo(p, n), tuple(rat(v) for v in valores))

    def to_groupring(self) -> GroupRingElt:
        """sum_i coords_i e_{n,i} en Q(zeta_n)[N_n]"""
        f = self.field
        total = GroupRingElt.cero(f)
        for i, c in enumerate(self.coords):
            if c != 0:
                total = gr_add(total, gr_scale(c, e_basis(f.p, f.n, i)))
        return total

    @staticmethod
    def from_groupring(x: GroupRingElt) -> 'HElt':
        """Recupera las coordenadas e por evaluación de caracteres; falla si x no está en H"""
        coords = coordenadas_h(x)
        if coords is None:
            raise ParametroInvalido("El elemento no pertenece al span racional de los e_i")
        return HElt(campo(x.field.p, x.grupo), tuple(coords))

    def __add__(self, otro: 'HElt') -> 'HElt':
        _mismo_nivel(self, otro)
        return HElt(self.field, tuple(a + b for a, b in zip(self.coords, otro.coords)))

    def __mul__(self, otro: 'HElt') -> 'HElt':
        return h_mul(self, otro)

    def to_json(self) -> List[str]:
        return [format_rat(c) for c in self.coords]

    @staticmethod
    def from_json(p: int, n: int, datos: Sequence[str]) -> 'HElt':
        return HElt(campo(p, n), tuple(parse_rat(s) for s in datos))


def _mismo_nivel(a: HElt, b: HElt) -> None:
    if a.field != b.field:
        raise NivelIncompatible(f"HElt de niveles {a.field.n} y {b.field.n}")


def h_mul(a: HElt, b: HElt) -> HElt:
    """Producto coordenada a coordenada: los e_i son idempotentes ortogonales"""
    _mismo_nivel(a, b)
    return HElt(a.field, tuple(x * y for x, y in zip(a.coords, b.coords)))


def coordenadas_h(x: GroupRingElt) -> Optional[List[Rat]]:
    """Coordenadas de x en la base e (del nivel del grupo) o None si x no está en ese span"""
    f = x.field
    orden = x.orden
    coords = []
    for k in range(orden):
        valor = character(k, x)
        if not valor.is_rational:
            return None
        coords.append(valor.coeffs[0])
    # reconstrucción exacta para descartar componentes fuera del span
    g = campo(f.p, x.grupo)
    reconstruido = HElt(g, tuple(coords)).to_groupring()
    if embed_coefficients(reconstruido, f.n) != x:
        return None
    return coords


def dual_pairing(i: int, k: int, p: int, n: int) -> Rat:
    """hat e_{n,i}(sigma^k) = (1/p^n) sum_j zeta^{(k-i) j}, evaluado como suma de caracteres"""
    f = campo(p, n)
    validar_indice(i, f.orden)
    validar_indice(k, f.orden, 'k')
    raw = [QQ(0)] * f.orden
    for j in range(f.orden):
        raw[((k - i) * j) % f.orden] += 1
    suma = reduce(p, n, raw)
    if not suma.is_rational:
        raise ArithmeticError("La suma de caracteres no es racional")
    return suma.coeffs[0] / f.orden


def h_comul(i: int, p: int, n: int) -> List[Tuple[int, int]]:
    """Delta(e_i) = sum_{s+t = i} e_s ⊗ e_t"""
    orden = p ** n
    validar_indice(i, orden)
    return [(s, (i - s) % orden) for s in range(orden)]


def h_counit(i: int) -> Rat:
    """epsilon(e_i) = delta_{i,0}"""
    return QQ(1) if i == 0 else QQ(0)


def h_antipode(i: int, p: int, n: int) -> int:
    """S(e_i) = e_{-i}"""
    orden = p ** n
    validar_indice(i, orden)
    return (-i) % orden


def h_counit_elt(h: HElt) -> Rat:
    return h.coords[0]


@dataclass(frozen=True)
class RadicalElt:
    p: int
    n: int
    radicand: Rat
    coords: Tuple[Rat, ...]

    def __post_init__(self):
        if len(self.coords) != self.p ** self.n:
            raise ParametroInvalido(f"Se esperaban {self.p ** self.n} coordenadas")

    @staticmethod
    def w_power(p: int, n: int, a, k: int) -> 'RadicalElt':
        """w^k para 0 <= k < p^n"""
        orden = p ** n
        validar_indice(k, orden, 'k')
        return RadicalElt(p, n, rat(a), tuple(QQ(1) if j == k else QQ(0) for j in range(orden)))

    @staticmethod
    def desde_lista(p: int, n: int, a, valores: Sequence) -> 'RadicalElt':
        return RadicalElt(p, n, rat(a), tuple(rat(v) for v in valores))

    def __add__(self, otro: 'RadicalElt') -> 'RadicalElt':
        _mismo_radical(self, otro)
        return RadicalElt(self.p, self.n, self.radicand,
                          tuple(x + y for x, y in zip(self.coords, otro.coords)))

    def __mul__(self, otro: 'RadicalElt') -> 'RadicalElt':
        """Producto con w^{p^n} = a"""
        _mismo_radical(self, otro)
        orden = self.p ** self.n
        res = [QQ(0)] * orden
        for j, x in enumerate(self.coords):
            if x == 0:
                continue
            for k, y in enumerate(otro.coords):
                if y != 0:
                    s = j + k
                    if s >= orden:
                        res[s - orden] += self.radicand * x * y
                    else:
                        res[s] += x * y
        return RadicalElt(self.p, self.n, self.radicand, tuple(res))

    def escalar(self, r) -> 'RadicalElt':
        r = rat(r)
        return RadicalElt(self.p, self.n, self.radicand, tuple(r * c for c in self.coords))

    def to_json(self) -> dict:
        return {'radicand': format_rat(self.radicand), 'coords': [format_rat(c) for c in self.coords]}


def _mismo_radical(a: RadicalElt, b: RadicalElt) -> None:
    if (a.p, a.n, a.radicand) != (b.p, b.n, b.radicand):
        raise NivelIncompatible("Elementos de extensiones radicales distintas")


def act(h: HElt, x: RadicalElt) -> RadicalElt:
    """e_i actúa como la proyección sobre la componente w^i"""
    if (h.field.p, h.field.n) != (x.p, x.n):
        raise NivelIncompatible(f"H de nivel {h.field.n} sobre Q(w_{x.n})")
    return RadicalElt(x.p, x.n, x.radicand, tuple(c * v for c, v in zip(h.coords, x.coords)))


def measuring_check(p: int, n: int, a) -> Reporte:
    """Comprueba e_i(w^j w^k) = sum_{s+t=i} e_s(w^j) e_t(w^k) en toda la base"""
    inicio = inicio_cronometro()
    validar_primo_impar(p)
    validar_nivel(n)
    a = validar_radicando(a, p)
    orden = p ** n
    w = [RadicalElt.w_power(p, n, a, k) for k in range(orden)]
    testigo = None
    for i in range(orden):
        e_i = HElt.base(p, n, i)
        pares = h_comul(i, p, n)
        for j in range(orden):
            for k in range(orden):
                izquierda = act(e_i, w[j] * w[k])
                derecha = RadicalElt(p, n, a, (QQ(0),) * orden)
                for s, t in pares:
                    derecha = derecha + act(HElt.base(p, n, s), w[j]) * act(HElt.base(p, n, t), w[k])
                if izquierda != derecha:
                    testigo = {'i': i, 'j': j, 'k': k,
                               'lhs': izquierda.to_json(), 'rhs': derecha.to_json()}
                    break
            if testigo:
                break
        if testigo:
            break
    return Reporte.crear('hopfgalois.measuring', {'p': p, 'n': n, 'a': format_rat(a)}, inicio,
                         testigo, triples=orden ** 3)


def _matriz_accion(h: HElt, p: int, n: int, a) -> List[List[Rat]]:
    """Matriz de x -> h(x) en la base {w^k} (columna k = imagen de w^k)"""
    orden = p ** n
    columnas = [act(h, RadicalElt.w_power(p, n, a, k)).coords for k in range(orden)]
    return [[columnas[k][r] for k in range(orden)] for r in range(orden)]


def fixed_field_check(p: int, n: int, a) -> Reporte:
    """{x : e_i(x) = epsilon(e_i) x para todo i} debe ser Q = span{w^0}"""
    inicio = inicio_cronometro()
    validar_primo_impar(p)
    validar_nivel(n)
    a = validar_radicando(a, p)
    orden = p ** n
    filas = []
    for i in range(orden):
        m = _matriz_accion(HElt.base(p, n, i), p, n, a)
        eps = h_counit(i)
        filas.extend([[m[r][c] - (eps if r == c else 0) for c in range(orden)] for r in range(orden)])
    base = nucleo(filas, orden)
    testigo = None
    if len(base) != 1 or any(c != 0 for c in base[0][1:]):
        testigo = {'dimension': len(base), 'base': [[format_rat(c) for c in v] for v in base]}
    return Reporte.crear('hopfgalois.fixed_field', {'p': p, 'n': n, 'a': format_rat(a)}, inicio,
                         testigo, dimension=len(base))


def base_change_sigma(p: int, n: int, m: int) -> Tuple[List[CycloElt], bool]:
    """c_i = zeta_n^{i p^{n-m}} con sum_i c_i e_{n,i} = sigma_n^{p^{n-m}}; c_i en la imagen de Q(zeta_m)"""
    validar_primo_impar(p)
    validar_nivel(n, 2)
    if not 1 <= m < n:
        raise ParametroInvalido(f"Se requiere 1 <= m < n, se recibió m={m}, n={n}")
    f = campo(p, n)
    fm = campo(p, m)
    salto = p ** (n - m)
    coefs = [zeta_power(f, i * salto) for i in range(f.orden)]
    total = GroupRingElt.cero(f)
    for i, c in enumerate(coefs):
        total = gr_add(total, gr_scale(c, e_basis(p, n, i)))
    verificado = total == sigma_power(f, salto)
    # zeta_n^{i p^{n-m}} = zeta_m^i
    verificado = verificado and all(
        embed(m, n, zeta_power(fm, i)) == c for i, c in enumerate(coefs))
    logger.debug("cambio de base p=%d n=%d m=%d: %s", p, n, m, verificado)
    return coefs, verificado


def base_change_check(p: int, n: int, m: int) -> Reporte:
    inicio = inicio_cronometro()
    _, ok = base_change_sigma(p, n, m)
    testigo = None if ok else {'p': p, 'n': n, 'm': m}
    return Reporte.crear('hopfgalois.base_change', {'p': p, 'n': n, 'm': m}, inicio, testigo)


def e_basis_independent(p: int, n: int) -> bool:
    """Certificado chi_k(e_i) = delta_ik, que implica independencia lineal"""
    f = campo(p, n)
    for i in range(f.orden):
        e = e_basis(p, n, i)
        for k in range(f.orden):
            esperado = CycloElt.racional(f, 1 if i == k else 0)
            if character(k, e) != esperado:
                return False
    return True


def dual_pairing_check(p: int, n: int) -> Reporte:
    """La matriz de apareamiento hat e_i(sigma^k) es la identidad"""
    inicio = inicio_cronometro()
    orden = p ** n
    testigo = None
    for i in range(orden):
        for k in range(orden):
            valor = dual_pairing(i, k, p, n)
            if valor != (1 if i == k else 0):
                testigo = {'i': i, 'k': k, 'valor': format_rat(valor)}
                break
        if testigo:
            break
    return Reporte.crear('hopfgalois.dual_pairing', {'p': p, 'n': n}, inicio, testigo,
                         tamano=orden)


def orthogonality_check(p: int, n: int) -> Reporte:
    """e_i e_j = delta_ij e_i, sum e_i = 1 e invariancia bajo Delta_n"""
    inicio = inicio_cronometro()
    f = campo(p, n)
    base = e_base_completa(p, n)
    testigo = None
    suma = GroupRingElt.cero(f)
    for e in base:
        suma = gr_add(suma, e)
    if suma != GroupRingElt.uno(f):
        testigo = {'suma_de_e': suma.to_json()}
    for i, e in enumerate(base):
        if testigo:
            break
        for exp in range(f.phi):
            if diag_action(exp, e) != e:
                testigo = {'i': i, 'delta_exponente': exp}
                break
    metodo = 'producto'
    if testigo is None and f.orden <= 9:
        cero = GroupRingElt.cero(f)
        for i in range(f.orden):
            for j in range(i, f.orden):
                esperado = base[i] if i == j else cero
                if gr_mul(base[i], base[j]) != esperado:
                    testigo = {'i': i, 'j': j}
                    break
            if testigo:
                break
    elif testigo is None:
        # los caracteres son multiplicativos y separan Q(zeta)[N]
        metodo = 'caracteres'
        if not e_basis_independent(p, n):
            testigo = {'certificado': 'chi_k(e_i) != delta_ik'}
    return Reporte.crear('hopfgalois.orthogonality', {'p': p, 'n': n}, inicio, testigo,
                         metodo=metodo)


def _tensor_de_e(p: int, n: int, pares: Sequence[Tuple[int, int]]) -> TensorElt:
    """sum_{(s,t)} e_s ⊗ e_t desarrollado en la base sigma^a ⊗ sigma^b"""
    f = campo(p, n)
    t = TensorElt(f, n)
    for s, u in pares:
        es, eu = e_basis(p, n, s), e_basis(p, n, u)
        for a, ca in enumerate(es.coeffs):
            for b, cb in enumerate(eu.coeffs):
                t.agregar((a, b), cmul(ca, cb))
    return t


def hopf_axioms_check(p: int, n: int) -> Reporte:
    """Coasociatividad, counidad y antípoda sobre la base e; para p^n <= 9 además
    se contrasta Delta(e_i) con la comultiplicación del anillo de grupo"""
    inicio = inicio_cronometro()
    orden = p ** n
    testigo = None
    for i in range(orden):
        izquierda = sorted((u, v, t) for s, t in h_comul(i, p, n) for u, v in h_comul(s, p, n))
        derecha = sorted((s, u, v) for s, t in h_comul(i, p, n) for u, v in h_comul(t, p, n))
        if izquierda != derecha:
            testigo = {'axioma': 'coasociatividad', 'i': i}
            break
        # (epsilon ⊗ id) Delta(e_i) = e_i = (id ⊗ epsilon) Delta(e_i)
        izq = [QQ(0)] * orden
        der = [QQ(0)] * orden
        for s, t in h_comul(i, p, n):
            izq[t] += h_counit(s)
            der[s] += h_counit(t)
        unidad_i = [QQ(1) if k == i else QQ(0) for k in range(orden)]
        if izq != unidad_i or der != unidad_i:
            testigo = {'axioma': 'counidad', 'i': i}
            break
        # m(S ⊗ id) Delta(e_i) = epsilon(e_i) 1
        producto = HElt.cero(p, n)
        for s, t in h_comul(i, p, n):
            producto = producto + h_mul(HElt.base(p, n, h_antipode(s, p, n)), HElt.base(p, n, t))
        esperado = HElt(campo(p, n), tuple(h_counit(i) for _ in range(orden)))
        if producto != esperado:
            testigo = {'axioma': 'antipoda', 'i': i}
            break
    contraste = orden <= 9
    if testigo is None and contraste:
        for i in range(orden):
            if gr_comul(e_basis(p, n, i)) != _tensor_de_e(p, n, h_comul(i, p, n)):
                testigo = {'axioma': 'comultiplicacion del anillo de grupo', 'i': i}
                break
    return Reporte.crear('hopfgalois.hopf_axioms', {'p': p, 'n': n}, inicio, testigo,
                         contraste_anillo_de_grupo=contraste)


def fixed_ring_check(p: int, n: int) -> Reporte:
    """El anillo fijo tiene dimensión p^n y coincide con span{e_{n,i}}"""
    inicio = inicio_cronometro()
    f = campo(p, n)
    fijos = fixed_ring(p, n)
    base_e = e_base_completa(p, n)
    dim_total = f.phi * f.orden
    testigo = None
    if len(fijos) != f.orden:
        testigo = {'dimension': len(fijos), 'esperada': f.orden}
    for i, e in enumerate(base_e):
        if testigo:
            break
        if diag_action(1, e) != e:
            testigo = {'e_no_invariante': i}
    metodo = 'certificado de caracteres'
    if testigo is None:
        if dim_total <= DIM_RANGO_DIRECTO:
            metodo = 'rango de la union'
            a = [x.vector() for x in fijos]
            b = [x.vector() for x in base_e]
            r_union = rango(a + b, dim_total)
            if not (rango(a, dim_total) == rango(b, dim_total) == r_union == f.orden):
                testigo = {'rango_union': r_union}
        elif not e_basis_independent(p, n):
            testigo = {'certificado': 'chi_k(e_i) != delta_ik'}
    return Reporte.crear('groupring.fixed_ring', {'p': p, 'n': n}, inicio, testigo,
                         dimension=len(fijos), dimension_ambiente=dim_total, metodo=metodo)
