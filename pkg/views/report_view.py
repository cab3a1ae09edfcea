"""
Presentación de reportes y objetos algebraicos: JSON estable o tabla de texto
"""
import json
from typing import Any, Dict, List, Sequence

from models.reporte import EstadoReporte, Reporte

ETIQUETAS = {
    EstadoReporte.PASS: 'OK',
    EstadoReporte.FAIL: 'FALLA',
    EstadoReporte.SKIPPED: 'OMITIDO',
}


def a_json(datos: Any) -> str:
    """JSON con claves ordenadas: la salida es idéntica entre corridas"""
    return json.dumps(datos, sort_keys=True, ensure_ascii=False, indent=2)


def reportes_json(reportes: Sequence[Reporte], incluir_tiempo: bool = False) -> str:
    return a_json({
        'reports': [r.to_dict(incluir_tiempo) for r in reportes],
        'summary': resumen(reportes),
    })


def resumen(reportes: Sequence[Reporte]) -> Dict[str, int]:
    conteo = {e.value: 0 for e in EstadoReporte}
    for r in reportes:
        conteo[r.estado.value] += 1
    return conteo


def _parametros(parametros: Dict[str, Any]) -> str:
    return ' '.join(f"{k}={parametros[k]}" for k in sorted(parametros))


def reportes_texto(reportes: Sequence[Reporte], incluir_tiempo: bool = False) -> str:
    """Tabla de una línea por reporte; los testigos van debajo de cada falla"""
    filas: List[List[str]] = [['ESTADO', 'AFIRMACIÓN', 'PARÁMETROS']]
    if incluir_tiempo:
        filas[0].append('MS')
    for r in reportes:
        fila = [ETIQUETAS[r.estado], r.claim, _parametros(r.parametros)]
        if incluir_tiempo:
            fila.append(str(r.elapsed_ms))
        filas.append(fila)
    anchos = [max(len(f[k]) for f in filas) for k in range(len(filas[0]))]
    lineas = []
    for k, fila in enumerate(filas):
        lineas.append('  '.join(c.ljust(a) for c, a in zip(fila, anchos)).rstrip())
        if k == 0:
            lineas.append('  '.join('-' * a for a in anchos))
            continue
        reporte = reportes[k - 1]
        if reporte.estado == EstadoReporte.FAIL:
            lineas.append(f"    testigo: {json.dumps(reporte.witness, sort_keys=True, ensure_ascii=False)}")
        elif reporte.estado == EstadoReporte.SKIPPED:
            lineas.append(f"    motivo: {reporte.detalle.get('motivo', '')}")
    conteo = resumen(reportes)
    lineas.append('')
    lineas.append(f"{conteo['pass']} ok, {conteo['fail']} fallas, {conteo['skipped']} omitidos")
    return '\n'.join(lineas)


def render_reportes(reportes: Sequence[Reporte], formato: str, incluir_tiempo: bool = False) -> str:
    if formato == 'json':
        return reportes_json(reportes, incluir_tiempo)
    return reportes_texto(reportes, incluir_tiempo)


def render_objeto(datos: Any, formato: str) -> str:
    """Objetos de construcción (bases, matrices, estructuras)"""
    if formato == 'json':
        return a_json(datos)
    return _texto_objeto(datos)


def _texto_objeto(datos: Any, sangria: int = 0) -> str:
    prefijo = ' ' * sangria
    if isinstance(datos, dict):
        lineas = []
        for clave in sorted(datos):
            valor = datos[clave]
            if isinstance(valor, (dict, list)) and not _es_fila_simple(valor):
                lineas.append(f"{prefijo}{clave}:")
                lineas.append(_texto_objeto(valor, sangria + 2))
            else:
                lineas.append(f"{prefijo}{clave}: {_texto_simple(valor)}")
        return '\n'.join(lineas)
    if isinstance(datos, list) and not _es_fila_simple(datos):
        return '\n'.join(_texto_objeto(x, sangria) if isinstance(x, (dict, list)) and not _es_fila_simple(x)
                         else f"{prefijo}{_texto_simple(x)}" for x in datos)
    return f"{prefijo}{_texto_simple(datos)}"


def _es_fila_simple(valor: Any) -> bool:
    return isinstance(valor, list) and all(not isinstance(x, (dict, list)) for x in valor)


def _texto_simple(valor: Any) -> str:
    if isinstance(valor, list):
        return '[' + ', '.join(str(x) for x in valor) + ']'
    return str(valor)


def historial_texto(reportes: Sequence[Reporte]) -> str:
    if not reportes:
        return "No hay reportes guardados"
    lineas = []
    for r in reportes:
        fecha = str(r.fecha)[:19] if r.fecha else ''
        lineas.append(f"#{r.id:<5} {fecha}  {r.run_id or '-':12}  {ETIQUETAS[r.estado]:8} "
                      f"{r.claim}  {_parametros(r.parametros)}")
    return '\n'.join(lineas)
