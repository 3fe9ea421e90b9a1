/** DOM wiring: a grid editor with a Saaty-scale selector per cell,
 * violation highlighting, pins, and the revise/accept/reject loop. */

import { ApiClient, ServiceError } from './api';
import { GridModel } from './grid';
import {
  renderChangeChips,
  renderViolations,
  renderWeights,
  reviseToast,
} from './render';
import { SCALE_OPTIONS, formatValue } from './scale';
import { RevisionWorkflow } from './workflow';

const DEFAULT_N = 4;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function scaleSelector(value: number, onChange: (v: number) => void): HTMLSelectElement {
  const select = el('select', 'scale-select');
  for (const option of SCALE_OPTIONS) {
    const item = el('option');
    item.value = String(option.value);
    item.textContent = `${option.label} — ${option.anchor}`;
    if (Math.abs(option.value - value) <= 1e-9 * option.value) {
      item.selected = true;
    }
    select.appendChild(item);
  }
  select.addEventListener('change', () => onChange(Number(select.value)));
  return select;
}

export function mountApp(root: HTMLElement, api: ApiClient): void {
  const grid = new GridModel({
    n: DEFAULT_N,
    upper: [],
  });
  const workflow = new RevisionWorkflow(api, grid);

  const toast = el('div', 'toast');
  const table = el('table', 'grid');
  const indicesBox = el('div', 'indices');
  const witnessBox = el('ul', 'witnesses');
  const chipsBox = el('div', 'chips');
  const weightsBox = el('div', 'weights');
  const reviseButton = el('button', undefined, 'Revise');
  const acceptButton = el('button', undefined, 'Accept suggestion');
  const rejectButton = el('button', undefined, 'Reject suggestion');

  function say(message: string): void {
    toast.textContent = message;
  }

  function redraw(): void {
    const state = workflow.snapshot();
    const analysis = state.analysis;
    const view = analysis === null ? null : renderViolations(analysis);

    table.replaceChildren();
    const header = el('tr');
    header.appendChild(el('th'));
    for (let j = 1; j <= grid.n; j++) {
      header.appendChild(el('th', undefined, grid.labels[j - 1]));
    }
    table.appendChild(header);
    for (let i = 1; i <= grid.n; i++) {
      const row = el('tr');
      row.appendChild(el('th', undefined, grid.labels[i - 1]));
      for (let j = 1; j <= grid.n; j++) {
        const cellState = grid.cell(i, j);
        const classes = ['cell'];
        if (view?.highlightedCells.has(`${Math.min(i, j)},${Math.max(i, j)}`)) {
          classes.push('violation');
        }
        if (cellState.pinned) classes.push('pinned');
        if (cellState.suggested !== null) classes.push('suggested');
        const td = el('td', classes.join(' '));
        if (i === j) {
          td.textContent = '1';
        } else if (i < j) {
          td.appendChild(
            scaleSelector(cellState.current, (value) => {
              grid.setCell(i, j, value);
              void refresh();
            }),
          );
          const pinToggle = el(
            'button',
            'pin',
            cellState.pinned ? 'unpin' : 'pin',
          );
          pinToggle.addEventListener('click', () => {
            grid.setPinned(i, j, !cellState.pinned);
            redraw();
          });
          td.appendChild(pinToggle);
          if (cellState.suggested !== null) {
            td.appendChild(
              el(
                'span',
                'chip',
                `${formatValue(cellState.current)} → ${formatValue(cellState.suggested)}`,
              ),
            );
          }
        } else {
          td.textContent = formatValue(cellState.current);
        }
        row.appendChild(td);
      }
      table.appendChild(row);
    }

    indicesBox.replaceChildren();
    witnessBox.replaceChildren();
    if (view !== null) {
      for (const row of view.indices) {
        const status = row.ok === null ? '' : row.ok ? ' ok' : ' over';
        indicesBox.appendChild(
          el(
            'div',
            `index${status}`,
            `${row.name} = ${row.value.toFixed(4)}` +
              (row.threshold === null ? '' : ` (threshold ${row.threshold})`),
          ),
        );
      }
      if (view.ranking !== null) {
        indicesBox.appendChild(
          el('div', 'ranking', `actual ranking: ${view.ranking.join(' ')}`),
        );
      }
      for (const witness of view.witnesses) {
        witnessBox.appendChild(el('li', 'witness', witness.text));
      }
      if (view.cycleBadge !== null) {
        witnessBox.appendChild(el('li', 'cycle-badge', view.cycleBadge.text));
      }
    }

    chipsBox.replaceChildren();
    if (state.suggestion !== null) {
      for (const chip of renderChangeChips(state.suggestion.changes)) {
        const classes = chip.reversal ? 'chip reversal' : 'chip';
        chipsBox.appendChild(
          el(
            'span',
            classes,
            `(${chip.i},${chip.j}) ${chip.oldLabel} → ${chip.newLabel}` +
              (chip.reversal ? ' (direction reversed)' : ''),
          ),
        );
      }
    }
    if (state.phase === 'infeasible') {
      const pins = state.conflictingPins
        .map(([i, j]) => `(${i},${j})`)
        .join(', ');
      say(`${state.message ?? 'infeasible'} — pins: ${pins}`);
    }

    reviseButton.disabled = state.phase === 'solving';
    acceptButton.disabled = state.phase !== 'reviewing';
    rejectButton.disabled = state.phase !== 'reviewing';
  }

  async function refresh(): Promise<void> {
    try {
      await workflow.refreshAnalysis();
    } catch (error) {
      say(error instanceof ServiceError ? error.message : String(error));
    }
    redraw();
  }

  reviseButton.addEventListener('click', () => {
    void (async () => {
      redraw();
      try {
        const outcome = await workflow.revise();
        say(reviseToast(outcome.changes));
      } catch (error) {
        say(error instanceof ServiceError ? error.message : String(error));
      }
      redraw();
    })();
  });

  acceptButton.addEventListener('click', () => {
    void (async () => {
      try {
        await workflow.accept();
        say('suggestion accepted');
      } catch (error) {
        say(error instanceof ServiceError ? error.message : String(error));
      }
      redraw();
    })();
  });

  rejectButton.addEventListener('click', () => {
    try {
      workflow.reject();
      say('suggestion rejected — adjust pins and re-solve');
    } catch (error) {
      say(String(error));
    }
    redraw();
  });

  const weightsButton = el('button', undefined, 'Prioritize (MNV-LLSM)');
  weightsButton.addEventListener('click', () => {
    void (async () => {
      try {
        const created = await api.uploadMatrix(grid.toDocument());
        const result = await api.prioritize(created.id, {
          method: 'llsm',
          mnv: true,
        });
        const view = renderWeights(result);
        weightsBox.replaceChildren(
          el('div', 'weights-title', `${view.method} (NV = ${view.nv})`),
          ...view.rows.map((row) =>
            el(
              'div',
              'weight-row',
              `${grid.labels[row.alternative - 1]}: ${row.weight.toFixed(4)}`,
            ),
          ),
        );
      } catch (error) {
        say(error instanceof ServiceError ? error.message : String(error));
      }
    })();
  });

  root.replaceChildren(
    toast,
    table,
    el('div', 'controls'),
    reviseButton,
    acceptButton,
    rejectButton,
    weightsButton,
    indicesBox,
    witnessBox,
    chipsBox,
    weightsBox,
  );

  void (async () => {
    try {
      await workflow.start();
    } catch (error) {
      say(error instanceof ServiceError ? error.message : String(error));
    }
    redraw();
  })();
}

declare global {
  interface Window {
    copAhpMount?: typeof mountApp;
  }
}

if (typeof window !== 'undefined') {
  window.copAhpMount = mountApp;
  const root = document.getElementById('app');
  if (root !== null) {
    mountApp(root, new ApiClient(''));
  }
}
