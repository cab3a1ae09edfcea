"""
Modelo y persistencia de los reportes de verificación
"""
import logging
import time
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional
import json

from database.connection import db
from utils.helpers import milisegundos_desde

logger = logging.getLogger(__name__)


class EstadoReporte(str, Enum):
    PASS = 'pass'
    FAIL = 'fail'
    SKIPPED = 'skipped'


# Afirmación verificada -> enunciado que respalda
CLAIMS: Dict[str, str] = {
    'cyclotomic.axiomas': "Q(zeta_{p^n}) es un campo y delta^e un automorfismo",
    'groupring.fixed_ring': "(Q(zeta_n)[N_n])^{Delta_n} tiene dimensión p^n y es el span de los e_{n,i}",
    'groupring.hopf_axioms': "Q(zeta_n)[N_n] es un álgebra de Hopf con Delta(g)=g⊗g",
    'hopfgalois.dual_pairing': "e_{n,i}(sigma^k) = delta_{ik}: H_n es el dual de Q N_n",
    'hopfgalois.orthogonality': "Los e_{n,i} son idempotentes ortogonales con suma 1",
    'hopfgalois.hopf_axioms': "Delta, epsilon, S sobre la base e satisfacen los axiomas de Hopf",
    'hopfgalois.measuring': "mu(h)(xy) = sum mu(h_(1))(x) mu(h_(2))(y)",
    'hopfgalois.fixed_field': "K^H = {x : h(x) = epsilon(h) x} es Q",
    'hopfgalois.base_change': "sum_i zeta_n^{i p^{n-m}} e_{n,i} = sigma_n^{p^{n-m}}",
    'smash_end.iso': "1#mu: Q(w_n)#H_n -> End_Q(Q(w_n)) es isomorfismo de álgebras",
    'smash_end.nine_matrices': "Las nueve matrices w^j#e_i para p=3, n=1",
    'smash_end.hom_subalgebra': "Hom(Q(w_n), Q(w_m)) tiene dimensión p^{n+m} y la base indicada",
    'smash_end.direct_limit': "w_m^j#e_{m,i} sobre Q(w_n) coincide con w_{m+1}^{pj}#e_{m+1,pi} y Hbar_{m,n} tiene dimensión p^n",
    'profinite.functoriality': "nu_{j,i} nu_{k,j} = nu_{k,i}",
    'profinite.nu_h': "nu(e_{n,i}) = e_{n-1,i/p} si p | i, 0 en otro caso",
    'profinite.surjectivity': "nu_{n,n-1}: H_n -> H_{n-1} es sobreyectivo",
    'profinite.commute': "delta nu = nu delta",
    'profinite.fixed_truncation': "H_inf = (Q_inf[N_inf])^{Delta_inf} nivel a nivel",
    'profinite.coherence': "Las sucesiones e_{n,i_n} con i_n = p i_{n-1} son coherentes",
    'variants.normal_complements': "Hay p complementos normales de <beta_n> en Gamma_{n,1}",
    'variants.fixed_field': "[E_{n,i} : Q] = phi(p^n)",
    'variants.h_variant': "H_{n,i} es una Q(zeta_1)-forma de rango p^n",
    'variants.action': "Q(w_n)/Q(zeta_1) es Hopf-Galois para H_{n,i}",
    'variants.images_distinct': "Los H_{n,i} inducen imágenes distintas en End",
    'variants.nu': "nu(sigma_n^i beta_n^{p^{n-2}}) = sigma_{n-1}^i beta_{n-1}^{p^{n-3}}",
    'variants.containment': "E_{n-1,i} contenido en E_{n,j} bajo la inclusión de niveles",
    'gp_enum.census': "Exactamente p^r estructuras Hopf-Galois, p^{min(r,n-r)} casi clásicas",
}


@dataclass
class Reporte:
    claim: str
    parametros: Dict[str, Any]
    estado: EstadoReporte
    witness: Optional[Any] = None
    elapsed_ms: int = 0
    detalle: Dict[str, Any] = field(default_factory=dict)
    run_id: Optional[str] = None
    fecha: Optional[datetime] = None
    id: Optional[int] = None

    def __post_init__(self):
        if self.claim not in CLAIMS:
            raise ValueError(f"Afirmación desconocida: {self.claim}")
        if self.estado == EstadoReporte.FAIL and self.witness is None:
            raise ValueError("Un reporte fallido debe llevar testigo")

    @staticmethod
    def crear(claim: str, parametros: Dict[str, Any], inicio: float,
              witness: Optional[Any] = None, **detalle) -> 'Reporte':
        """Reporte pass/fail según haya o no contraejemplo"""
        estado = EstadoReporte.FAIL if witness is not None else EstadoReporte.PASS
        reporte = Reporte(claim=claim, parametros=parametros, estado=estado, witness=witness,
                          elapsed_ms=milisegundos_desde(inicio), detalle=detalle)
        logger.info("%s %s: %s (%d ms)", claim, parametros, estado.value, reporte.elapsed_ms)
        return reporte

    @staticmethod
    def omitido(claim: str, parametros: Dict[str, Any], motivo: str) -> 'Reporte':
        logger.info("%s %s: omitido (%s)", claim, parametros, motivo)
        return Reporte(claim=claim, parametros=parametros, estado=EstadoReporte.SKIPPED,
                       detalle={'motivo': motivo})

    @property
    def paso(self) -> bool:
        return self.estado != EstadoReporte.FAIL

    def to_dict(self, incluir_tiempo: bool = False) -> Dict[str, Any]:
        """Forma estable para JSON; sin marcas de tiempo salvo que se pidan"""
        datos = {
            'claim': self.claim,
            'parameters': self.parametros,
            'status': self.estado.value,
            'witness': self.witness,
            'detail': self.detalle,
        }
        if incluir_tiempo:
            datos['elapsed_ms'] = self.elapsed_ms
        return datos

    def guardar(self) -> int:
        """Guarda el reporte en la base de datos"""
        if not self.fecha:
            self.fecha = datetime.now()
        self.id = db.execute('''
            INSERT INTO Reportes (Run_ID, Claim, Parametros, Estado, Witness, Detalle, Elapsed_MS, Fecha)
            VALUES (?, ?, ?, ?, ?, ?, ?, ?)
        ''', (
            self.run_id, self.claim, json.dumps(self.parametros, sort_keys=True),
            self.estado.value, json.dumps(self.witness, sort_keys=True),
            json.dumps(self.detalle, sort_keys=True), self.elapsed_ms, self.fecha
        ))
        return self.id

    @staticmethod
    def buscar_por_id(reporte_id: int) -> Optional['Reporte']:
        row = db.fetch_one('SELECT * FROM Reportes WHERE ID = ?', (reporte_id,))
        return Reporte._from_row(row) if row else None

    @staticmethod
    def listar_por_run(run_id: str) -> List['Reporte']:
        rows = db.fetch_all('SELECT * FROM Reportes WHERE Run_ID = ? ORDER BY ID', (run_id,))
        return [Reporte._from_row(r) for r in rows]

    @staticmethod
    def listar_recientes(limite: int = 20) -> List['Reporte']:
        rows = db.fetch_all('SELECT * FROM Reportes ORDER BY ID DESC LIMIT ?', (limite,))
        return [Reporte._from_row(r) for r in rows]

    @staticmethod
    def resumen_por_estado(run_id: Optional[str] = None) -> Dict[str, int]:
        """Cantidad de reportes por estado, opcionalmente de una sola corrida"""
        if run_id:
            rows = db.fetch_all('''
                SELECT Estado, COUNT(*) AS Total FROM Reportes WHERE Run_ID = ? GROUP BY Estado
            ''', (run_id,))
        else:
            rows = db.fetch_all('SELECT Estado, COUNT(*) AS Total FROM Reportes GROUP BY Estado')
        return {r['Estado']: r['Total'] for r in rows}

    @staticmethod
    def _from_row(row: dict) -> 'Reporte':
        return Reporte(
            id=row['ID'],
            run_id=row['Run_ID'],
            claim=row['Claim'],
            parametros=json.loads(row['Parametros']),
            estado=EstadoReporte(row['Estado']),
            witness=json.loads(row['Witness']) if row['Witness'] else None,
            detalle=json.loads(row['Detalle']) if row['Detalle'] else {},
            elapsed_ms=row['Elapsed_MS'] or 0,
            fecha=row['Fecha'],
        )


def inicio_cronometro() -> float:
    return time.perf_counter()
