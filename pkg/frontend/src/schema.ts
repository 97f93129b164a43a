/**
 * Bench CSV schema: the frozen interface to the evaluation backend.
 *
 * The header must match bit-exactly; every row is fully numeric with the
 * backend's 17-significant-digit rendering, so value/reference/abs_error
 * round-trip losslessly through doubles. abs_error is recomputed here and
 * cross-checked against the stored column; nothing else is recomputed.
 */

export const CSV_HEADER =
  "method,n,alpha,value,reference,abs_error,seconds,digits,truncation";

export const COLUMNS = CSV_HEADER.split(",");

export interface BenchRow {
  method: string;
  n: number;
  alpha: number;
  value: number;
  reference: number;
  /** |value - reference|, recomputed from the parsed doubles. */
  absError: number;
  seconds: number;
  digits: number;
  truncation: number;
}

export class SchemaError extends Error {}

/** The backend renders non-finite doubles as nan / inf / -inf. */
function parseFloatField(raw: string, column: string, line: number): number {
  const text = raw.trim();
  if (text === "nan") return Number.NaN;
  if (text === "inf") return Number.POSITIVE_INFINITY;
  if (text === "-inf") return Number.NEGATIVE_INFINITY;
  const value = Number(text);
  if (text === "" || Number.isNaN(value)) {
    throw new SchemaError(
      `line ${line}: column "${column}" is not a number: "${raw}"`,
    );
  }
  return value;
}

function parseIntField(raw: string, column: string, line: number): number {
  const value = parseFloatField(raw, column, line);
  if (!Number.isInteger(value)) {
    throw new SchemaError(
      `line ${line}: column "${column}" must be an integer, got "${raw}"`,
    );
  }
  return value;
}

function checkHeader(header: string): void {
  if (header === CSV_HEADER) return;
  const got = header.split(",");
  if (got.length !== COLUMNS.length) {
    throw new SchemaError(
      `header has ${got.length} columns, expected ${COLUMNS.length} ` +
        `(${CSV_HEADER})`,
    );
  }
  for (let i = 0; i < COLUMNS.length; i += 1) {
    if (got[i] !== COLUMNS[i]) {
      throw new SchemaError(
        `header column ${i + 1}: expected "${COLUMNS[i]}", got "${got[i]}"`,
      );
    }
  }
}

export function parseBenchCsv(text: string): BenchRow[] {
  const lines = text.split("\n");
  while (lines.length > 0 && lines[lines.length - 1]!.trim() === "") {
    lines.pop();
  }
  if (lines.length === 0) {
    throw new SchemaError("empty CSV: no header line");
  }
  if (lines.some((l) => l.includes("\r"))) {
    throw new SchemaError("CSV must use LF line endings, found CR");
  }
  checkHeader(lines[0]!);
  if (lines.length === 1) {
    throw new SchemaError("CSV has a header but no data rows");
  }

  const rows: BenchRow[] = [];
  for (let i = 1; i < lines.length; i += 1) {
    const fields = lines[i]!.split(",");
    const line = i + 1;
    if (fields.length !== COLUMNS.length) {
      throw new SchemaError(
        `line ${line}: ${fields.length} fields, expected ${COLUMNS.length}`,
      );
    }
    const method = fields[0]!.trim();
    if (method === "") {
      throw new SchemaError(`line ${line}: column "method" is empty`);
    }
    const value = parseFloatField(fields[3]!, "value", line);
    const reference = parseFloatField(fields[4]!, "reference", line);
    const storedAbsError = parseFloatField(fields[5]!, "abs_error", line);
    const absError = Math.abs(value - reference);
    // Doubles round-trip exactly through the 17-digit rendering, so the
    // stored abs_error must equal the recomputed one bit for bit (NaN
    // compares equal to NaN here; infinities compare as usual).
    const bothNaN = Number.isNaN(absError) && Number.isNaN(storedAbsError);
    if (!bothNaN && absError !== storedAbsError) {
      throw new SchemaError(
        `line ${line}: column "abs_error" is ${fields[5]} but ` +
          `|value - reference| is ${absError}`,
      );
    }
    rows.push({
      method,
      n: parseIntField(fields[1]!, "n", line),
      alpha: parseFloatField(fields[2]!, "alpha", line),
      value,
      reference,
      absError,
      seconds: parseFloatField(fields[6]!, "seconds", line),
      digits: parseIntField(fields[7]!, "digits", line),
      truncation: parseIntField(fields[8]!, "truncation", line),
    });
  }
  return rows;
}

export function methodsPresent(rows: BenchRow[]): string[] {
  return [...new Set(rows.map((r) => r.method))].sort();
}

export function groupBy<K>(
  rows: BenchRow[],
  key: (row: BenchRow) => K,
): Map<K, BenchRow[]> {
  const out = new Map<K, BenchRow[]>();
  for (const row of rows) {
    const k = key(row);
    const bucket = out.get(k);
    if (bucket) {
      bucket.push(row);
    } else {
      out.set(k, [row]);
    }
  }
  return out;
}
