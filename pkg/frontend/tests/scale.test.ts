import { describe, expect, it } from 'vitest';

import {
  SCALE_OPTIONS,
  formatValue,
  isOnScale,
  parseValue,
  scaleOption,
} from '../src/scale';

describe('scale options', () => {
  it('offers exactly 17 selectable values', () => {
    expect(SCALE_OPTIONS).toHaveLength(17);
  });

  it('is ascending from 1/9 to 9', () => {
    const values = SCALE_OPTIONS.map((o) => o.value);
    expect(values[0]).toBeCloseTo(1 / 9, 12);
    expect(values[16]).toBe(9);
    for (let i = 1; i < values.length; i++) {
      expect(values[i]!).toBeGreaterThan(values[i - 1]!);
    }
  });

  it('pairs every value with its reciprocal', () => {
    for (const option of SCALE_OPTIONS) {
      expect(isOnScale(1 / option.value)).toBe(true);
    }
  });

  it('carries verbal anchors, with 3 meaning slightly more important', () => {
    expect(scaleOption(3)?.anchor).toBe('slightly more important');
    expect(scaleOption(1)?.anchor).toBe('equally important');
    expect(scaleOption(1 / 3)?.anchor).toContain('less important');
    for (const option of SCALE_OPTIONS) {
      expect(option.anchor.length).toBeGreaterThan(0);
    }
  });
});

describe('formatValue', () => {
  it('renders reciprocals as fractions', () => {
    expect(formatValue(1 / 7)).toBe('1/7');
    expect(formatValue(7)).toBe('7');
    expect(formatValue(1)).toBe('1');
  });

  it('falls back to decimals for off-scale values', () => {
    expect(formatValue(3.7)).toBe('3.7');
  });
});

describe('parseValue', () => {
  it('accepts integers, fractions, and numbers', () => {
    expect(parseValue('6')).toBe(6);
    expect(parseValue('1/4')).toBe(0.25);
    expect(parseValue(' 1 / 8 ')).toBe(0.125);
    expect(parseValue(2.5)).toBe(2.5);
  });

  it('rejects malformed or non-positive input', () => {
    expect(() => parseValue('')).toThrow();
    expect(() => parseValue('abc')).toThrow();
    expect(() => parseValue('1/0')).toThrow();
    expect(() => parseValue(-3)).toThrow();
    expect(() => parseValue(0)).toThrow();
    expect(() => parseValue(Number.NaN)).toThrow();
  });
});
