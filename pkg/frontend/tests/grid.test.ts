import { beforeEach, describe, expect, it } from 'vitest';

import type { Analysis } from '../src/api';
import { GridModel, isDirectionReversal } from '../src/grid';

const VIOLATING_DOC = {
  n: 4,
  upper: [
    [1, 2, 6],
    [1, 3, 7],
    [1, 4, 9],
    [2, 3, 3],
    [2, 4, 8],
    [3, 4, 5],
  ] as Array<[number, number, number]>,
};

function analysisWith(overrides: Partial<Analysis>): Analysis {
  return {
    n: 4,
    on_scale: true,
    cr: 0.05,
    gci: 0.2,
    gci_threshold: 0.35,
    transitive: true,
    cycle: null,
    index_exchangeable: true,
    witnesses: [],
    actual_ranking: [1, 2, 3, 4],
    ...overrides,
  };
}

describe('GridModel editing', () => {
  let grid: GridModel;

  beforeEach(() => {
    grid = new GridModel(VIOLATING_DOC);
  });

  it('loads upper-triangle values and mirrors reciprocals', () => {
    expect(grid.cell(1, 2).current).toBe(6);
    expect(grid.cell(2, 1).current).toBeCloseTo(1 / 6, 12);
    expect(grid.cell(3, 3).current).toBe(1);
  });

  it('updates the mirror cell on every edit', () => {
    grid.setCell(1, 2, 4);
    expect(grid.cell(2, 1).current).toBeCloseTo(1 / 4, 12);
    grid.setCell(2, 1, 1 / 5);
    expect(grid.cell(1, 2).current).toBe(5);
  });

  it('rejects off-scale values and diagonal edits', () => {
    expect(() => grid.setCell(1, 2, 3.7)).toThrow(/not on the comparison scale/);
    expect(() => grid.setCell(1, 2, 0)).toThrow();
    expect(() => grid.setCell(2, 2, 3)).toThrow(/diagonal/);
  });

  it('accepts string fractions in the source document', () => {
    const fromStrings = new GridModel({
      n: 3,
      upper: [
        [1, 2, '1/4'],
        [1, 3, 2],
        [2, 3, 8],
      ],
    });
    expect(fromStrings.cell(1, 2).current).toBe(0.25);
  });

  it('serializes only the upper triangle, so reciprocity cannot break', () => {
    grid.setCell(2, 1, 1 / 2);
    const doc = grid.toDocument();
    expect(doc.upper).toHaveLength(6);
    for (const [i, j] of doc.upper.map(([a, b]) => [a, b])) {
      expect(i).toBeLessThan(j!);
    }
    const entry = doc.upper.find(([i, j]) => i === 1 && j === 2);
    expect(entry?.[2]).toBe(2);
  });
});

describe('GridModel pins', () => {
  it('tracks pins on either orientation of a pair', () => {
    const grid = new GridModel(VIOLATING_DOC);
    grid.setPinned(1, 2, true);
    grid.setPinned(4, 3, true);
    expect(grid.pins()).toEqual([
      [1, 2, 6],
      [3, 4, 5],
    ]);
    grid.setPinned(1, 2, false);
    expect(grid.pins()).toEqual([[3, 4, 5]]);
  });

  it('refuses to pin the diagonal', () => {
    const grid = new GridModel(VIOLATING_DOC);
    expect(() => grid.setPinned(2, 2, true)).toThrow(/diagonal/);
  });
});

describe('GridModel violation marking', () => {
  it('marks all four cells of each witness quadruple', () => {
    const grid = new GridModel(VIOLATING_DOC);
    grid.applyAnalysis(
      analysisWith({
        index_exchangeable: false,
        witnesses: [[1, 3, 2, 4]],
      }),
    );
    expect(grid.cell(1, 3).onViolationPath).toBe(true);
    expect(grid.cell(2, 4).onViolationPath).toBe(true);
    expect(grid.cell(1, 2).onViolationPath).toBe(true);
    expect(grid.cell(3, 4).onViolationPath).toBe(true);
    expect(grid.cell(1, 4).onViolationPath).toBe(false);
    expect(grid.cell(2, 3).onViolationPath).toBe(false);
  });

  it('marks the pairs inside a preference cycle', () => {
    const grid = new GridModel(VIOLATING_DOC);
    grid.applyAnalysis(
      analysisWith({
        transitive: false,
        cycle: [1, 3, 4],
        actual_ranking: null,
      }),
    );
    expect(grid.cell(1, 3).onViolationPath).toBe(true);
    expect(grid.cell(3, 4).onViolationPath).toBe(true);
    expect(grid.cell(1, 4).onViolationPath).toBe(true);
    expect(grid.cell(1, 2).onViolationPath).toBe(false);
  });

  it('clears stale marks on re-analysis', () => {
    const grid = new GridModel(VIOLATING_DOC);
    grid.applyAnalysis(
      analysisWith({ index_exchangeable: false, witnesses: [[1, 2, 3, 4]] }),
    );
    expect(grid.cell(1, 2).onViolationPath).toBe(true);
    grid.applyAnalysis(analysisWith({}));
    expect(grid.cell(1, 2).onViolationPath).toBe(false);
  });
});

describe('GridModel suggestions', () => {
  it('stages, accepts, and mirrors suggested changes', () => {
    const grid = new GridModel(VIOLATING_DOC);
    grid.applySuggestion([
      { i: 1, j: 2, old: 6, new: 4 },
      { i: 3, j: 4, old: 5, new: 7 },
    ]);
    expect(grid.suggestedCount()).toBe(2);
    expect(grid.cell(1, 2).suggested).toBe(4);
    expect(grid.cell(2, 1).suggested).toBeCloseTo(1 / 4, 12);
    expect(grid.cell(1, 2).current).toBe(6);

    grid.acceptSuggestion();
    expect(grid.cell(1, 2).current).toBe(4);
    expect(grid.cell(3, 4).current).toBe(7);
    expect(grid.suggestedCount()).toBe(0);
  });

  it('reject keeps the current values untouched', () => {
    const grid = new GridModel(VIOLATING_DOC);
    grid.applySuggestion([{ i: 1, j: 2, old: 6, new: 4 }]);
    grid.rejectSuggestion();
    expect(grid.cell(1, 2).current).toBe(6);
    expect(grid.suggestedCount()).toBe(0);
  });
});

describe('isDirectionReversal', () => {
  it('flags only sign-of-preference flips', () => {
    expect(isDirectionReversal(6, 1 / 4)).toBe(true);
    expect(isDirectionReversal(1 / 4, 6)).toBe(true);
    expect(isDirectionReversal(6, 4)).toBe(false);
    expect(isDirectionReversal(1 / 6, 1 / 4)).toBe(false);
    expect(isDirectionReversal(1, 3)).toBe(false);
  });
});
