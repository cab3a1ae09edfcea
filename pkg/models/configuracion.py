"""
Modelo de la configuración persistida del verificador
"""
from dataclasses import dataclass
from datetime import datetime
from typing import List, Optional, Tuple

from database.connection import db
from models.errores import ParametroInvalido


@dataclass
class Configuracion:
    p: int = 3
    n: int = 2
    radicando: str = "2/1"
    nivel: int = 3
    semilla: int = 20240917
    cap_generico: int = 15
    cap_potencia_primo: int = 27
    limite_dim_profinita: int = 20000
    instancias_verify_all: str = "3:1,3:2,5:1,7:1,3:3"
    instancias_census: str = "3:1:0,3:2:0,3:2:1,3:2:2"
    formato: str = "text"
    fecha_actualizacion: Optional[datetime] = None
    id: int = 1

    @staticmethod
    def obtener() -> 'Configuracion':
        """Obtiene la configuración actual"""
        row = db.fetch_one('SELECT * FROM Configuracion WHERE ID = 1')
        if row:
            return Configuracion._from_row(row)
        # Si no existe, crear configuración por defecto
        config = Configuracion()
        config.guardar()
        return config

    def guardar(self) -> None:
        """Guarda la configuración"""
        self.fecha_actualizacion = datetime.now()
        db.execute('''
            INSERT OR REPLACE INTO Configuracion
            (ID, P, N, Radicando, Nivel, Semilla, Cap_Generico, Cap_Potencia_Primo,
             Limite_Dim_Profinita, Instancias_Verify_All, Instancias_Census, Formato, Fecha_Actualizacion)
            VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
        ''', (
            self.id, self.p, self.n, self.radicando, self.nivel, self.semilla,
            self.cap_generico, self.cap_potencia_primo, self.limite_dim_profinita,
            self.instancias_verify_all, self.instancias_census, self.formato,
            self.fecha_actualizacion
        ))

    def instancias(self) -> List[Tuple[int, int]]:
        """Pares (p, n) de verify-all"""
        return [_tupla(t, 2) for t in self.instancias_verify_all.split(',') if t.strip()]

    def instancias_de_census(self) -> List[Tuple[int, int, int]]:
        """Ternas (p, n, r) del censo de estructuras"""
        return [_tupla(t, 3) for t in self.instancias_census.split(',') if t.strip()]

    def cap_para(self, es_potencia_primo: bool) -> int:
        return self.cap_potencia_primo if es_potencia_primo else self.cap_generico

    @staticmethod
    def _from_row(row: dict) -> 'Configuracion':
        """Crea un objeto Configuracion desde una fila de la base de datos"""
        return Configuracion(
            id=row['ID'],
            p=row['P'],
            n=row['N'],
            radicando=row['Radicando'],
            nivel=row['Nivel'],
            semilla=row['Semilla'],
            cap_generico=row['Cap_Generico'],
            cap_potencia_primo=row['Cap_Potencia_Primo'],
            limite_dim_profinita=row['Limite_Dim_Profinita'],
            instancias_verify_all=row['Instancias_Verify_All'],
            instancias_census=row['Instancias_Census'],
            formato=row['Formato'],
            fecha_actualizacion=row['Fecha_Actualizacion'],
        )


def _tupla(texto: str, largo: int) -> Tuple[int, ...]:
    try:
        valores = tuple(int(x) for x in texto.strip().split(':'))
    except ValueError:
        raise ParametroInvalido(f"Instancia mal formada: '{texto}'")
    if len(valores) != largo:
        raise ParametroInvalido(f"Instancia '{texto}' debe tener {largo} componentes")
    return valores


# Instancia global de configuración (lazy loading)
_config: Optional[Configuracion] = None


def get_config() -> Configuracion:
    """Obtiene la instancia global de configuración"""
    global _config
    if _config is None:
        _config = Configuracion.obtener()
    return _config


def refresh_config() -> Configuracion:
    """Refresca y retorna la configuración actual"""
    global _config
    _config = Configuracion.obtener()
    return _config


def configuracion_por_defecto() -> Configuracion:
    """Configuración sin tocar la base de datos (para uso sin persistencia)"""
    return Configuracion()
