"""
╔══════════════════════════════════════════════════════════════╗
║      ROTDIFF — Report Writers (CSV, JSON, .dat, Excel)       ║
╠══════════════════════════════════════════════════════════════╣
║  Every artifact of a run goes through here:                  ║
║    • CSV  — tables (stages, laws, convergents)               ║
║    • JSON — plans and verification reports                   ║
║    • .dat — two-column histograms for gnuplot and friends    ║
║    • xlsx — human-facing summary workbook (openpyxl)         ║
║                                                              ║
║  CSV/JSON/.dat files open with a header carrying the tool    ║
║  version and the sha256 of the run's config; they hold no    ║
║  timestamps, so identical configs give identical bytes.      ║
╚══════════════════════════════════════════════════════════════╝
"""

import csv
import hashlib
import io
import json
import logging
import math
import os

from utils.event_bus import event_bus

log = logging.getLogger("rotdiff.reports")

VERSION = "1.0.0"
TOOL = "rotdiff"


def config_hash(config):
    """sha256 of the config's canonical JSON form."""
    blob = json.dumps(config, sort_keys=True, default=str, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def header_block(config, title):
    return {"tool": TOOL, "version": VERSION, "config_sha256": config_hash(config), "title": title}


def _comment_lines(header):
    return "".join(f"# {key}: {header[key]}\n" for key in ("tool", "version", "config_sha256", "title"))


def _written(path, kind, detail):
    event_bus.emit("artifact_written", {"path": path, "kind": kind})
    log.info(f"{kind} written: {path} ({detail})")
    return {"success": True, "path": path, "content": f"{os.path.basename(path)} ({detail})"}


# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
#  CSV / JSON / histogram
# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━

def write_csv(path, headers, rows, header):
    """Header comment block, then the table. Returns the usual result dict."""
    buf = io.StringIO(newline="")
    buf.write(_comment_lines(header))
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    with open(path, "w", newline="", encoding="utf-8") as f:
        f.write(buf.getvalue())
    return _written(path, "csv", f"{len(rows)} rows")


def write_json(path, payload, header):
    body = {"header": header, **payload}
    with open(path, "w", encoding="utf-8") as f:
        json.dump(body, f, indent=2, sort_keys=True, ensure_ascii=False)
        f.write("\n")
    return _written(path, "json", f"{len(payload)} keys")


def write_histogram(path, law, header):
    """Two columns, real atom value and mass, one atom per line."""
    root = math.sqrt(law.root_scale)
    lines = [_comment_lines(header), "# value mass\n"]
    for v, m in law.atoms:
        lines.append(f"{float(v) / root!r} {float(m)!r}\n")
    with open(path, "w", encoding="utf-8") as f:
        f.write("".join(lines))
    return _written(path, "histogram", f"{len(law.atoms)} atoms")


def read_csv_table(path):
    """(headers, rows) of a CSV written by write_csv, comment lines skipped."""
    with open(path, newline="", encoding="utf-8") as f:
        lines = [line for line in f if not line.startswith("#")]
    table = list(csv.reader(lines))
    if not table:
        return [], []
    return table[0], table[1:]


def read_json(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
#  Excel workbook
# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━

def generate_excel(title, sheets, path, summary=None, auto_width=True):
    """Summary workbook, one sheet per (name, headers, rows) table.

    Args:
        title: title row of every sheet
        sheets: list of (sheet_name, headers, rows)
        path: output .xlsx path
        summary: optional dict shown under the first table
    """
    try:
        from openpyxl import Workbook
        from openpyxl.styles import Alignment, Border, Font, PatternFill, Side
        from openpyxl.utils import get_column_letter
    except ImportError:
        return {"success": False, "error": True,
                "content": "openpyxl not installed. Run: pip install openpyxl"}

    title_font = Font(name="Helvetica Neue", size=16, bold=True, color="1A1A2E")
    header_font = Font(name="Helvetica Neue", size=11, bold=True, color="FFFFFF")
    header_fill = PatternFill(start_color="1A1A2E", end_color="1A1A2E", fill_type="solid")
    data_font = Font(name="Helvetica Neue", size=10)
    alt_fill = PatternFill(start_color="F0F0F5", end_color="F0F0F5", fill_type="solid")
    thin = Side(style="thin", color="D0D0D0")
    border = Border(left=thin, right=thin, top=thin, bottom=thin)

    wb = Workbook()
    wb.remove(wb.active)
    for index, (name, headers, rows) in enumerate(sheets):
        ws = wb.create_sheet(title=name[:31])
        width = max(len(headers), 1)
        ws.merge_cells(start_row=1, start_column=1, end_row=1, end_column=width)
        cell = ws.cell(row=1, column=1, value=f"{title} · {name}")
        cell.font = title_font
        cell.alignment = Alignment(horizontal="left", vertical="center")
        ws.row_dimensions[1].height = 35

        start_row = 3
        for col, header in enumerate(headers, 1):
            cell = ws.cell(row=start_row, column=col, value=header)
            cell.font = header_font
            cell.fill = header_fill
            cell.alignment = Alignment(horizontal="center", vertical="center")
            cell.border = border

        for row_idx, row in enumerate(rows, start_row + 1):
            for col, value in enumerate(row, 1):
                cell = ws.cell(row=row_idx, column=col, value=value)
                cell.font = data_font
                cell.border = border
                if (row_idx - start_row) % 2 == 0:
                    cell.fill = alt_fill

        if summary and index == 0:
            top = start_row + len(rows) + 2
            ws.cell(row=top, column=1, value="Summary").font = Font(
                name="Helvetica Neue", size=12, bold=True, color="1A1A2E")
            for i, (key, val) in enumerate(summary.items(), 1):
                ws.cell(row=top + i, column=1, value=key).font = Font(
                    name="Helvetica Neue", size=10, bold=True)
                ws.cell(row=top + i, column=2, value=val).font = data_font

        if auto_width:
            for col in range(1, len(headers) + 1):
                longest = max([len(str(headers[col - 1]))] +
                              [len(str(r[col - 1])) for r in rows if col - 1 < len(r)])
                ws.column_dimensions[get_column_letter(col)].width = min(longest + 4, 50)

    if not wb.sheetnames:
        wb.create_sheet(title="Report")
    wb.save(path)
    return _written(path, "xlsx", f"{len(sheets)} sheets")
