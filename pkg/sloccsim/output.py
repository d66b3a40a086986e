"""Écriture des résultats : CSV (en-tête fixe, 12 chiffres significatifs, fins de ligne LF), JSON, bloc clé-valeur."""
import csv
import json
import math

CSV_HEADER = ("channel", "eta", "indist", "td", "t", "concurrence", "fidelity", "p_lr")


def format_number(value):
    return "nan" if math.isnan(value) else f"{value:.12g}"


def _json_number(value):
    return None if math.isnan(value) else float(format_number(value))


def row_fields(row):
    return (row.channel.value, f"{row.eta:+d}", format_number(row.indist), format_number(row.t_deform),
            format_number(row.t_total), format_number(row.concurrence), format_number(row.fidelity),
            format_number(row.p_lr))


def write_csv(rows, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row_fields(row))


def row_record(row):
    record = dict(zip(CSV_HEADER, (row.channel.value, row.eta, _json_number(row.indist),
                                   _json_number(row.t_deform), _json_number(row.t_total),
                                   _json_number(row.concurrence), _json_number(row.fidelity),
                                   _json_number(row.p_lr))))
    if row.result is not None:
        record["deformed"] = row.result.deformed
        record["pops_final"] = {k: _json_number(v) for k, v in row.result.pops_final.as_dict().items()}
    if row.error is not None:
        record["error"] = row.error
    return record


def write_json(rows, stream):
    json.dump([row_record(row) for row in rows], stream, indent=2, ensure_ascii=False)
    stream.write("\n")


WRITERS = {"csv": write_csv, "json": write_json}


def write_rows(rows, stream, output_format="csv"):
    WRITERS[output_format](rows, stream)


def render_result(scenario, result):
    """Bloc clé-valeur affiché par `run`."""
    lines = [
        ("channel", scenario.channel.value),
        ("eta", f"{scenario.coeffs.eta:+d}"),
        ("indist", format_number(result.indistinguishability)),
        ("td", format_number(scenario.t_deform)),
        ("t", format_number(scenario.t_total)),
        ("concurrence", format_number(result.concurrence)),
        ("fidelity", format_number(result.fidelity)),
        ("p_lr", format_number(result.p_lr)),
    ]
    for label, value in result.pops_final.as_dict().items():
        lines.append((f"p[{label}]", format_number(value)))
    width = max(len(key) for key, _ in lines)
    return "\n".join(f"{key.ljust(width)} : {value}" for key, value in lines)
