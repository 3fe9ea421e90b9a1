/** Client-side grid model mirroring the matrix document, with per-cell
 * editing, pinning, and suggestion state. Reciprocity is enforced here:
 * every edit of (i, j) writes 1/value to (j, i), and the only way to
 * produce a submittable document is via upper-triangle entries. */

import type { Analysis, MatrixDocument, RevisionChange } from './api';
import { isOnScale } from './scale';

export interface CellState {
  /** Value as first loaded. */
  original: number;
  /** Value after user edits. */
  current: number;
  /** Value proposed by the last revise run, if any. */
  suggested: number | null;
  pinned: boolean;
  /** Cell participates in a violation witness or a preference cycle. */
  onViolationPath: boolean;
}

function key(i: number, j: number): string {
  return `${i},${j}`;
}

export class GridModel {
  readonly n: number;
  readonly labels: string[];
  private readonly cells = new Map<string, CellState>();

  constructor(doc: MatrixDocument) {
    this.n = doc.n;
    this.labels =
      doc.labels ?? Array.from({ length: doc.n }, (_, i) => `A${i + 1}`);
    for (let i = 1; i <= doc.n; i++) {
      for (let j = i + 1; j <= doc.n; j++) {
        this.cells.set(key(i, j), {
          original: 1,
          current: 1,
          suggested: null,
          pinned: false,
          onViolationPath: false,
        });
      }
    }
    for (const [i, j, raw] of doc.upper) {
      const value = typeof raw === 'string' ? parseFraction(raw) : raw;
      const cell = this.upperCell(i, j);
      cell.original = value;
      cell.current = value;
    }
  }

  /** State of cell (i, j), 1-based. Below the diagonal the value fields
   * are the reciprocals of the stored upper-triangle cell. */
  cell(i: number, j: number): CellState {
    if (i === j) {
      return {
        original: 1,
        current: 1,
        suggested: null,
        pinned: false,
        onViolationPath: false,
      };
    }
    const upper = i < j ? this.upperCell(i, j) : this.upperCell(j, i);
    if (i < j) return { ...upper };
    return {
      original: 1 / upper.original,
      current: 1 / upper.current,
      suggested: upper.suggested === null ? null : 1 / upper.suggested,
      pinned: upper.pinned,
      onViolationPath: upper.onViolationPath,
    };
  }

  /** Set cell (i, j) to a scale value; (j, i) becomes its reciprocal. */
  setCell(i: number, j: number, value: number): void {
    if (i === j) throw new Error('diagonal cells are fixed at 1');
    if (!isOnScale(value)) {
      throw new Error(`value ${value} is not on the comparison scale`);
    }
    if (i < j) {
      this.upperCell(i, j).current = value;
    } else {
      this.upperCell(j, i).current = 1 / value;
    }
  }

  setPinned(i: number, j: number, pinned: boolean): void {
    if (i === j) throw new Error('diagonal cells cannot be pinned');
    const cell = i < j ? this.upperCell(i, j) : this.upperCell(j, i);
    cell.pinned = pinned;
  }

  /** Pins as 1-based upper-triangle triples, at the current values. */
  pins(): Array<[number, number, number]> {
    const out: Array<[number, number, number]> = [];
    for (const [k, cell] of this.cells) {
      if (!cell.pinned) continue;
      const [i, j] = k.split(',').map(Number) as [number, number];
      out.push([i, j, cell.current]);
    }
    return out.sort((a, b) => a[0] - b[0] || a[1] - b[1]);
  }

  /** Mark cells on violation witnesses and preference cycles. */
  applyAnalysis(analysis: Analysis): void {
    for (const cell of this.cells.values()) cell.onViolationPath = false;
    for (const [i, j, k, l] of analysis.witnesses) {
      for (const [a, b] of [[i, j], [k, l], [i, k], [j, l]] as const) {
        this.upperCell(Math.min(a, b), Math.max(a, b)).onViolationPath = true;
      }
    }
    if (analysis.cycle !== null) {
      const members = analysis.cycle;
      for (let a = 0; a < members.length; a++) {
        for (let b = a + 1; b < members.length; b++) {
          const i = Math.min(members[a]!, members[b]!);
          const j = Math.max(members[a]!, members[b]!);
          this.upperCell(i, j).onViolationPath = true;
        }
      }
    }
  }

  /** Stage a suggested revision without committing it. */
  applySuggestion(changes: RevisionChange[]): void {
    this.clearSuggestion();
    for (const change of changes) {
      const i = Math.min(change.i, change.j);
      const j = Math.max(change.i, change.j);
      const value = change.i < change.j ? change.new : 1 / change.new;
      this.upperCell(i, j).suggested = value;
    }
  }

  /** Number of cells with a pending suggestion. */
  suggestedCount(): number {
    let count = 0;
    for (const cell of this.cells.values()) {
      if (cell.suggested !== null) count++;
    }
    return count;
  }

  /** Commit the pending suggestion into the current values. */
  acceptSuggestion(): void {
    for (const cell of this.cells.values()) {
      if (cell.suggested !== null) {
        cell.current = cell.suggested;
        cell.suggested = null;
      }
    }
  }

  /** Drop the pending suggestion, keeping current values. */
  rejectSuggestion(): void {
    this.clearSuggestion();
  }

  /** Serialize to the service document format. Reciprocity cannot be
   * violated: only upper-triangle values are emitted. */
  toDocument(): MatrixDocument {
    const upper: Array<[number, number, number]> = [];
    for (let i = 1; i <= this.n; i++) {
      for (let j = i + 1; j <= this.n; j++) {
        upper.push([i, j, this.upperCell(i, j).current]);
      }
    }
    return { n: this.n, upper, labels: [...this.labels] };
  }

  private clearSuggestion(): void {
    for (const cell of this.cells.values()) cell.suggested = null;
  }

  private upperCell(i: number, j: number): CellState {
    const cell = this.cells.get(key(i, j));
    if (cell === undefined) {
      throw new Error(`no cell (${i}, ${j}) in a ${this.n}x${this.n} grid`);
    }
    return cell;
  }
}

function parseFraction(raw: string): number {
  const match = /^(\d+)\s*\/\s*(\d+)$/.exec(raw.trim());
  if (match) return Number(match[1]) / Number(match[2]);
  const value = Number(raw);
  if (!Number.isFinite(value) || value <= 0) {
    throw new Error(`cannot parse value ${JSON.stringify(raw)}`);
  }
  return value;
}

/** True when the suggested value reverses the direction of preference. */
export function isDirectionReversal(oldValue: number, newValue: number): boolean {
  return (oldValue > 1 && newValue < 1) || (oldValue < 1 && newValue > 1);
}
