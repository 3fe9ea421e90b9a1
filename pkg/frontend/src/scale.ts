/** The 17-point comparison scale: 1/9 … 1/2, 1, 2 … 9. */

export interface ScaleOption {
  /** Exact numeric value of the option. */
  value: number;
  /** Canonical display label, reciprocals as fractions ("1/7"). */
  label: string;
  /** Verbal anchor shown next to the number in the selector. */
  anchor: string;
}

const ANCHORS: ReadonlyArray<readonly [number, string]> = [
  [1, 'equally important'],
  [2, 'between equal and slight'],
  [3, 'slightly more important'],
  [4, 'between slight and strong'],
  [5, 'strongly more important'],
  [6, 'between strong and very strong'],
  [7, 'very strongly more important'],
  [8, 'between very strong and extreme'],
  [9, 'extremely more important'],
];

function reciprocalAnchor(anchor: string): string {
  return anchor
    .replace('more important', 'less important')
    .replace('equally important', 'equally important');
}

/** All 17 selectable options, ascending from 1/9 to 9. */
export const SCALE_OPTIONS: readonly ScaleOption[] = [
  ...[...ANCHORS]
    .slice(1)
    .reverse()
    .map(([v, anchor]): ScaleOption => ({
      value: 1 / v,
      label: `1/${v}`,
      anchor: reciprocalAnchor(anchor),
    })),
  ...ANCHORS.map(([v, anchor]): ScaleOption => ({
    value: v,
    label: String(v),
    anchor,
  })),
];

const TOLERANCE = 1e-9;

/** Find the scale option matching a numeric value, or null if off scale. */
export function scaleOption(value: number): ScaleOption | null {
  for (const option of SCALE_OPTIONS) {
    if (Math.abs(option.value - value) <= TOLERANCE * option.value) {
      return option;
    }
  }
  return null;
}

/** True when the value is one of the 17 scale points. */
export function isOnScale(value: number): boolean {
  return scaleOption(value) !== null;
}

/** Canonical label for a scale value; falls back to a short decimal. */
export function formatValue(value: number): string {
  const option = scaleOption(value);
  if (option !== null) return option.label;
  return value.toFixed(4).replace(/0+$/, '').replace(/\.$/, '');
}

/** Parse "7", "1/7", or a number into a numeric value. Throws if malformed. */
export function parseValue(raw: string | number): number {
  if (typeof raw === 'number') {
    if (!Number.isFinite(raw) || raw <= 0) {
      throw new Error(`comparison value must be positive, got ${raw}`);
    }
    return raw;
  }
  const text = raw.trim();
  const fraction = /^(\d+)\s*\/\s*(\d+)$/.exec(text);
  if (fraction) {
    const num = Number(fraction[1]);
    const den = Number(fraction[2]);
    if (den === 0) throw new Error(`division by zero in ${JSON.stringify(raw)}`);
    return num / den;
  }
  const value = Number(text);
  if (!Number.isFinite(value) || value <= 0 || text === '') {
    throw new Error(`cannot parse comparison value ${JSON.stringify(raw)}`);
  }
  return value;
}
