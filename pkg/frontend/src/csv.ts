/** RFC-4180-style CSV reader for pareto-lab experiment outputs.
 *
 * Files start with zero or more `#` comment lines (the first carries the
 * harness provenance), then a header row, then data rows. Quoted fields and
 * embedded commas are handled; line endings may be LF or CRLF.
 */

export interface Table {
  /** The first comment line without its leading `#`, trimmed ("" if none). */
  provenance: string;
  header: string[];
  rows: string[][];
}

function splitLine(line: string): string[] {
  const out: string[] = [];
  let field = "";
  let quoted = false;
  for (let i = 0; i < line.length; i++) {
    const ch = line[i];
    if (quoted) {
      if (ch === '"') {
        if (line[i + 1] === '"') {
          field += '"';
          i++;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch === '"') {
      quoted = true;
    } else if (ch === ",") {
      out.push(field);
      field = "";
    } else {
      field += ch;
    }
  }
  out.push(field);
  return out;
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((ln) => ln.length > 0);
  let provenance = "";
  let start = 0;
  while (start < lines.length && lines[start]!.startsWith("#")) {
    if (provenance === "") provenance = lines[start]!.slice(1).trim();
    start++;
  }
  if (start >= lines.length) {
    throw new Error("no data: file holds no header row");
  }
  const header = splitLine(lines[start]!);
  const rows = lines.slice(start + 1).map(splitLine);
  for (const row of rows) {
    if (row.length !== header.length) {
      throw new Error(
        `malformed row: expected ${header.length} fields, got ${row.length}`,
      );
    }
  }
  return { provenance, header, rows };
}

/** Column accessor that fails loudly when a column is missing. */
export function column(table: Table, name: string): string[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new Error(
      `column '${name}' missing (have: ${table.header.join(", ")})`,
    );
  }
  return table.rows.map((r) => r[idx]!);
}

export function numericColumn(table: Table, name: string): number[] {
  return column(table, name).map((v) => {
    const x = Number(v);
    if (!Number.isFinite(x)) {
      throw new Error(`column '${name}' holds non-numeric value '${v}'`);
    }
    return x;
  });
}
