/** Pure view-model builders. Every number in these structures is copied
 * verbatim from a service response — nothing is recomputed client-side. */

import type { Analysis, Prioritization, RevisionChange } from './api';
import { isDirectionReversal } from './grid';
import { formatValue } from './scale';

export interface IndexRow {
  name: string;
  value: number;
  threshold: number | null;
  ok: boolean | null;
}

export interface CycleBadge {
  /** 1-based alternative numbers forming the cycle. */
  members: number[];
  text: string;
}

export interface WitnessItem {
  quad: [number, number, number, number];
  text: string;
}

export interface ViolationView {
  /** "i,j" keys (1-based, upper triangle) of cells to highlight. */
  highlightedCells: Set<string>;
  witnesses: WitnessItem[];
  cycleBadge: CycleBadge | null;
  indices: IndexRow[];
  ranking: number[] | null;
}

const CR_THRESHOLD = 0.1;

/** Build the violation view from a fetched analysis. */
export function renderViolations(analysis: Analysis): ViolationView {
  const highlighted = new Set<string>();
  const witnesses: WitnessItem[] = [];
  for (const [i, j, k, l] of analysis.witnesses) {
    for (const [a, b] of [[i, j], [k, l], [i, k], [j, l]] as const) {
      highlighted.add(`${Math.min(a, b)},${Math.max(a, b)}`);
    }
    witnesses.push({
      quad: [i, j, k, l],
      text: `pair (${i},${j}) vs pair (${k},${l}) disagree with the crossed comparisons`,
    });
  }
  let cycleBadge: CycleBadge | null = null;
  if (analysis.cycle !== null) {
    const members = [...analysis.cycle];
    for (let a = 0; a < members.length; a++) {
      for (let b = a + 1; b < members.length; b++) {
        const i = Math.min(members[a]!, members[b]!);
        const j = Math.max(members[a]!, members[b]!);
        highlighted.add(`${i},${j}`);
      }
    }
    cycleBadge = {
      members,
      text: `preference cycle through alternatives ${members.join(', ')}`,
    };
  }
  return {
    highlightedCells: highlighted,
    witnesses,
    cycleBadge,
    indices: [
      {
        name: 'CR',
        value: analysis.cr,
        threshold: CR_THRESHOLD,
        ok: analysis.cr <= CR_THRESHOLD,
      },
      {
        name: 'GCI',
        value: analysis.gci,
        threshold: analysis.gci_threshold,
        ok: analysis.gci <= analysis.gci_threshold,
      },
    ],
    ranking: analysis.actual_ranking,
  };
}

export interface ChangeChip {
  i: number;
  j: number;
  oldLabel: string;
  newLabel: string;
  /** Direction of preference flips; needs explicit confirmation. */
  reversal: boolean;
}

/** Suggested changes as old→new chips, reversals flagged. */
export function renderChangeChips(changes: RevisionChange[]): ChangeChip[] {
  return changes.map((change) => ({
    i: change.i,
    j: change.j,
    oldLabel: formatValue(change.old),
    newLabel: formatValue(change.new),
    reversal: isDirectionReversal(change.old, change.new),
  }));
}

/** Toast text after a revise run; no-op revisions get a clear message. */
export function reviseToast(changes: RevisionChange[]): string {
  if (changes.length === 0) return 'no changes needed';
  const reversals = changes.filter((c) =>
    isDirectionReversal(c.old, c.new),
  ).length;
  const base = `${changes.length} suggested change${changes.length === 1 ? '' : 's'}`;
  return reversals > 0
    ? `${base} (${reversals} reverse${reversals === 1 ? 's' : ''} a preference)`
    : base;
}

export interface WeightsView {
  method: string;
  rows: Array<{ alternative: number; weight: number }>;
  nv: number;
}

/** Priority weights as displayable rows, heaviest first. */
export function renderWeights(result: Prioritization): WeightsView {
  const rows = result.w
    .map((weight, index) => ({ alternative: index + 1, weight }))
    .sort((a, b) => b.weight - a.weight);
  return { method: result.method, rows, nv: result.nv };
}
