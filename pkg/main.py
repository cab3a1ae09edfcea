"""
Verificador de álgebras de Hopf para Q(a^{1/p^n})/Q
===================================================
Herramienta de línea de comandos escrita en Python con sympy

Características principales:
- Aritmética exacta en Q(zeta_{p^n}) y en el anillo de grupo Q(zeta_{p^n})[N_n]
- Álgebra de Hopf H_n en la base de idempotentes e_{n,i} y su acción sobre Q(w_n)
- Isomorfismo Q(w_n)#H_n -> End_Q(Q(w_n)) y descomposición de matrices
- Sistemas inversos truncados, variantes H_{n,i} y censo de estructuras
- Reportes pass/fail con testigo, persistidos en SQLite

Versión: 1.0.0
"""

import argparse
import json
import logging
import os
import sys
from typing import Callable, Dict, List, Optional

# Asegurar que el directorio del proyecto esté en el path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from models.configuracion import Configuracion, configuracion_por_defecto, get_config
from models.errores import CapExcedido, HopfError, ParametroInvalido
from models.reporte import Reporte
from models import cyclotomic, gp_enum, groupring, hopfgalois, profinite, smash_end, variants
from utils.helpers import (
    format_rat, parse_lista_rat, parse_rat, validar_nivel, validar_primo_impar, validar_radicando,
)
from utils.session import session
from views.report_view import historial_texto, render_objeto, render_reportes

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALLA = 1
EXIT_USO = 2
EXIT_CAP = 3

# Instancias de cambio de base fuera de la matriz por defecto
CAMBIO_DE_BASE_EXTRA = [(5, 2, 1)]
# Pares (n, m) de Hom(Q(w_n), Q(w_m)) para p = 3
HOM_SUBALGEBRAS = [(1, 2), (2, 1), (2, 2)]
# Instancias donde la verificación exhaustiva del producto smash es razonable
ORDEN_MAXIMO_SMASH = 25


class UsoInvalido(HopfError):
    """Combinación de argumentos sin sentido para el subcomando"""


class HopfApp:
    """Clase principal de la aplicación: arma el parser y despacha subcomandos"""

    def __init__(self, config: Optional[Configuracion] = None):
        self.config = config
        self.args: Optional[argparse.Namespace] = None

    def parser(self) -> argparse.ArgumentParser:
        comunes = argparse.ArgumentParser(add_help=False)
        comunes.add_argument('--p', type=int, help="primo impar")
        comunes.add_argument('--n', type=int, help="nivel n >= 1")
        comunes.add_argument('--m', type=int, help="segundo nivel (cambio de base, Hom)")
        comunes.add_argument('--i', type=int, help="índice de e_{n,i} o de N_{n,i}")
        comunes.add_argument('--j', type=int, help="índice del complemento de llegada")
        comunes.add_argument('--r', type=int, help="nivel de raíces de la unidad de la base")
        comunes.add_argument('--a', type=str, help="radicando racional 'num/den'")
        comunes.add_argument('--level', type=int, help="nivel de truncamiento L")
        comunes.add_argument('--seed', type=int, help="semilla de las muestras aleatorias")
        comunes.add_argument('--format', choices=['json', 'text'], help="formato de salida")
        comunes.add_argument('--out', type=str, help="archivo de salida")
        comunes.add_argument('--input', type=str, help="archivo JSON de entrada")
        comunes.add_argument('--log-level', default='WARNING',
                             choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
        comunes.add_argument('--no-save', action='store_true', help="no guardar reportes")
        comunes.add_argument('--timings', action='store_true', help="incluir elapsed_ms")

        parser = argparse.ArgumentParser(
            prog='hopf', description="Verificador de álgebras de Hopf de extensiones radicales")
        sub = parser.add_subparsers(dest='comando', required=True)
        sub.add_parser('basis', parents=[comunes], help="emite e_{n,i}")
        act = sub.add_parser('act', parents=[comunes], help="aplica h en H_n a x en Q(w_n)")
        act.add_argument('--h', type=str, required=True, help="coordenadas de h en la base e")
        act.add_argument('--x', type=str, required=True, help="coordenadas de x en la base w^k")
        smash = sub.add_parser('smash', parents=[comunes], help="producto smash y su matriz")
        smash.add_argument('--left', type=str, required=True, help="términos 'j:i:c;...'")
        smash.add_argument('--right', type=str, help="términos 'j:i:c;...'")
        sub.add_parser('decompose', parents=[comunes], help="matriz -> coeficientes c_{j,i}")
        nu = sub.add_parser('nu', parents=[comunes], help="aplica nu_{n,n-1} a h en H_n")
        nu.add_argument('--h', type=str, required=True, help="coordenadas de h en la base e")
        sub.add_parser('profinite', parents=[comunes], help="suite de sistemas inversos")
        sub.add_parser('variants', parents=[comunes], help="complementos normales y H_{n,i}")
        sub.add_parser('census', parents=[comunes], help="censo de estructuras Hopf-Galois")
        sub.add_parser('verify-all', parents=[comunes], help="suite completa")
        historia = sub.add_parser('history', parents=[comunes], help="reportes guardados")
        historia.add_argument('--limit', type=int, default=20)
        historia.add_argument('--run', type=str, help="identificador de corrida")
        return parser

    def run(self, argv: Optional[List[str]] = None) -> int:
        """Punto de entrada: devuelve el código de salida"""
        parser = self.parser()
        try:
            self.args = parser.parse_args(argv)
        except SystemExit as e:
            return EXIT_OK if e.code == 0 else EXIT_USO
        logging.basicConfig(level=getattr(logging, self.args.log_level), stream=sys.stderr,
                            format='%(levelname)s %(name)s: %(message)s')
        if self.config is None:
            self.config = configuracion_por_defecto() if self.args.no_save else get_config()
        acciones: Dict[str, Callable[[], int]] = {
            'basis': self._basis,
            'act': self._act,
            'smash': self._smash,
            'decompose': self._decompose,
            'nu': self._nu,
            'profinite': self._profinite,
            'variants': self._variants,
            'census': self._census,
            'verify-all': self._verify_all,
            'history': self._history,
        }
        session.iniciar(self._valor('seed', self.config.semilla), guardar=not self.args.no_save)
        try:
            codigo = acciones[self.args.comando]()
        except CapExcedido as e:
            print(f"error: {e} (cap={e.cap})", file=sys.stderr)
            codigo = EXIT_CAP
        except (ParametroInvalido, UsoInvalido, HopfError, ValueError) as e:
            print(f"error: {e}", file=sys.stderr)
            codigo = EXIT_USO
        finally:
            session.cerrar()
        return codigo

    # Parámetros

    def _valor(self, nombre: str, defecto):
        valor = getattr(self.args, nombre, None)
        return defecto if valor is None else valor

    @property
    def formato(self) -> str:
        return self._valor('format', self.config.formato)

    def _p(self) -> int:
        return validar_primo_impar(self._valor('p', self.config.p))

    def _n(self, minimo: int = 1) -> int:
        return validar_nivel(self._valor('n', self.config.n), minimo)

    def _a(self, p: int):
        return validar_radicando(parse_rat(self._valor('a', self.config.radicando)), p)

    def _requerir(self, nombre: str) -> int:
        valor = getattr(self.args, nombre, None)
        if valor is None:
            raise UsoInvalido(f"'{self.args.comando}' requiere --{nombre}")
        return valor

    def _leer_entrada(self):
        ruta = self._requerir('input')
        try:
            with open(ruta, encoding='utf-8') as archivo:
                return json.load(archivo)
        except (OSError, json.JSONDecodeError) as e:
            raise UsoInvalido(f"No se pudo leer {ruta}: {e}")

    # Salida

    def _emitir(self, texto: str) -> None:
        ruta = getattr(self.args, 'out', None)
        if ruta:
            with open(ruta, 'w', encoding='utf-8') as archivo:
                archivo.write(texto + '\n')
        else:
            print(texto)

    def _emitir_reportes(self, reportes: List[Reporte]) -> int:
        for r in reportes:
            session.registrar(r)
        self._emitir(render_reportes(reportes, self.formato, self.args.timings))
        return EXIT_OK if all(r.paso for r in reportes) else EXIT_FALLA

    # Subcomandos

    def _basis(self) -> int:
        p, n = self._p(), self._n()
        i = self._requerir('i')
        e = hopfgalois.e_basis(p, n, i)
        datos = {'p': p, 'n': n, 'i': i, 'coeffs': e.to_json()}
        self._emitir(render_objeto(datos, self.formato))
        return EXIT_OK

    def _act(self) -> int:
        p, n = self._p(), self._n()
        a = self._a(p)
        h = hopfgalois.HElt.desde_lista(p, n, parse_lista_rat(self.args.h))
        x = hopfgalois.RadicalElt.desde_lista(p, n, a, parse_lista_rat(self.args.x))
        self._emitir(render_objeto(hopfgalois.act(h, x).to_json(), self.formato))
        return EXIT_OK

    def _terminos(self, texto: str) -> Dict:
        terminos = {}
        for parte in texto.split(';'):
            if not parte.strip():
                continue
            try:
                j, i, c = parte.split(':', 2)
                terminos[(int(j), int(i))] = parse_rat(c)
            except ValueError:
                raise UsoInvalido(f"Término mal formado: '{parte}' (se espera j:i:c)")
        return terminos

    def _smash(self) -> int:
        p, n = self._p(), self._n()
        a = self._a(p)
        x = smash_end.SmashElt(p, n, a, self._terminos(self.args.left))
        if self.args.right:
            x = x * smash_end.SmashElt(p, n, a, self._terminos(self.args.right))
        datos = {'element': x.to_json(), 'matrix': smash_end.to_end_matrix(x).to_json()}
        self._emitir(render_objeto(datos, self.formato))
        return EXIT_OK

    def _decompose(self) -> int:
        M = smash_end.QMatrix.from_json(self._leer_entrada())
        validar_primo_impar(M.p)
        coefs = smash_end.decompose_endomorphism(M, M.p, M.n, M.a)
        datos = {'p': M.p, 'n': M.n, 'a': format_rat(M.a),
                 'coefficients': [[j, i, format_rat(c)] for (j, i), c in sorted(coefs.items())]}
        self._emitir(render_objeto(datos, self.formato))
        return EXIT_OK

    def _nu(self) -> int:
        p, n = self._p(), self._n(minimo=2)
        h = hopfgalois.HElt.desde_lista(p, n, parse_lista_rat(self.args.h))
        imagen = profinite.nu_h(n, h)
        self._emitir(render_objeto({'p': p, 'n': n - 1, 'coords': imagen.to_json()}, self.formato))
        return EXIT_OK

    def _profinite(self) -> int:
        p = self._p()
        L = validar_nivel(self._valor('level', self.config.nivel), 2)
        reportes = profinite.profinite_suite(p, L, session.semilla, self.config.limite_dim_profinita)
        return self._emitir_reportes(reportes)

    def _variants(self) -> int:
        p, n = self._p(), self._n(minimo=2)
        a = self._a(p)
        i = getattr(self.args, 'i', None)
        j = getattr(self.args, 'j', None)
        if j is not None:
            if i is None:
                raise UsoInvalido("--j requiere --i")
            return self._emitir_reportes([variants.containment_check(p, n, i, j, a)[1]])
        if i is not None:
            reportes = [variants.normal_complements_check(p, n), variants.variant_action_check(p, n, i, a)]
            return self._emitir_reportes(reportes)
        return self._emitir_reportes(variants.variants_suite(p, n, a))

    def _census(self) -> int:
        caps = (self.config.cap_generico, self.config.cap_potencia_primo)
        if getattr(self.args, 'input', None):
            Gamma, Delta = gp_enum.grupos_desde_json(self._leer_entrada())
            estructuras = gp_enum.enumerate_regular_normalized(Gamma, Delta, *caps)
            self._emitir(render_objeto([s.to_json() for s in estructuras], self.formato))
            return EXIT_OK
        if self.args.p is None:
            reportes = [gp_enum.census(p, n, r, *caps)[1] for p, n, r in self.config.instancias_de_census()]
            return self._emitir_reportes(reportes)
        p, n = self._p(), self._n()
        r = self._valor('r', 0)
        if not 0 <= r <= n:
            raise ParametroInvalido(f"r debe estar en 0..{n}")
        return self._emitir_reportes([gp_enum.census(p, n, r, *caps)[1]])

    def _verify_all(self) -> int:
        if self.args.p is not None or self.args.n is not None:
            instancias = [(self._p(), self._n())]
        else:
            instancias = self.config.instancias()
        reportes: List[Reporte] = []
        primos_vistos = set()
        for p, n in instancias:
            validar_primo_impar(p)
            a = self._a(p)
            reportes.extend(self._suite_de_instancia(p, n, a))
            if p <= 5 and p not in primos_vistos:
                primos_vistos.add(p)
                L = self._valor('level', self.config.nivel)
                reportes.extend(profinite.profinite_suite(p, L, session.semilla,
                                                          self.config.limite_dim_profinita))
        if len(instancias) > 1:
            for p, n, m in CAMBIO_DE_BASE_EXTRA:
                reportes.append(hopfgalois.base_change_check(p, n, m))
            reportes.append(smash_end.nine_matrices_check(self._a(3)))
            for n, m in HOM_SUBALGEBRAS:
                reportes.append(smash_end.hom_subalgebra_check(n, m, 3, self._a(3)))
            reportes.append(smash_end.direct_limit_check(1, 3, 3, self._a(3)))
            caps = (self.config.cap_generico, self.config.cap_potencia_primo)
            for p, n, r in self.config.instancias_de_census():
                reportes.append(gp_enum.census(p, n, r, *caps)[1])
        return self._emitir_reportes(reportes)

    def _suite_de_instancia(self, p: int, n: int, a) -> List[Reporte]:
        """Reportes de los módulos de un nivel fijo (p, n)"""
        orden = p ** n
        semilla = session.semilla
        reportes = [
            cyclotomic.axioms_check(p, n, semilla),
            groupring.hopf_axioms_check(p, n, semilla),
            hopfgalois.dual_pairing_check(p, n),
            hopfgalois.orthogonality_check(p, n),
            hopfgalois.hopf_axioms_check(p, n),
            hopfgalois.fixed_ring_check(p, n),
            hopfgalois.fixed_field_check(p, n, a),
        ]
        for m in range(1, n):
            reportes.append(hopfgalois.base_change_check(p, n, m))
        if orden <= ORDEN_MAXIMO_SMASH:
            reportes.append(hopfgalois.measuring_check(p, n, a))
            reportes.append(smash_end.iso_check(p, n, a, semilla))
        else:
            motivo = f"p^n = {orden} > {ORDEN_MAXIMO_SMASH}"
            reportes.append(Reporte.omitido('hopfgalois.measuring', {'p': p, 'n': n}, motivo))
            reportes.append(Reporte.omitido('smash_end.iso', {'p': p, 'n': n}, motivo))
        if n >= 2 and p == 3:
            reportes.extend(variants.variants_suite(p, n, a))
        return reportes

    def _history(self) -> int:
        if self.args.run:
            reportes = Reporte.listar_por_run(self.args.run)
        else:
            reportes = Reporte.listar_recientes(self.args.limit)
        if self.formato == 'json':
            self._emitir(render_objeto([dict(r.to_dict(True), id=r.id, run_id=r.run_id) for r in reportes],
                                       'json'))
        else:
            self._emitir(historial_texto(reportes))
        return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Función principal de entrada"""
    app = HopfApp()
    return app.run(argv)


if __name__ == "__main__":
    sys.exit(main())
