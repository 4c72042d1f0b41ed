/**
 * Plain-text reports: one row per model, one column per condition,
 * mean +/- std macro F1 in each cell, with per-trial detail underneath.
 */

import type { BaselineReport } from "./baseline.js";
import type { EvalReport } from "./evaluate.js";

function fmt(mean: number, std: number): string {
  return `${mean.toFixed(3)} ± ${std.toFixed(3)}`;
}

export function renderSummaryTable(reports: EvalReport[], baselines: BaselineReport[] = []): string {
  const conditions = [...new Set([
    ...reports.map((r) => r.condition),
    ...baselines.map((b) => b.condition),
  ])];
  const models = [...new Set(reports.map((r) => r.model))];
  const width = Math.max(16, ...models.map((m) => m.length), ...baselines.map((b) => b.name.length));
  const colWidth = Math.max(18, ...conditions.map((c) => c.length + 2));

  const lines: string[] = [];
  lines.push(
    "model/baseline".padEnd(width) + conditions.map((c) => c.padStart(colWidth)).join(""),
  );
  for (const model of models) {
    const cells = conditions.map((cond) => {
      const r = reports.find((x) => x.model === model && x.condition === cond);
      return (r ? fmt(r.macroF1.mean, r.macroF1.std) : "-").padStart(colWidth);
    });
    lines.push(model.padEnd(width) + cells.join(""));
  }
  for (const name of [...new Set(baselines.map((b) => b.name))]) {
    const cells = conditions.map((cond) => {
      const b = baselines.find((x) => x.name === name && x.condition === cond);
      return (b ? fmt(b.macroF1.mean, b.macroF1.std) : "-").padStart(colWidth);
    });
    lines.push(name.padEnd(width) + cells.join(""));
  }
  return lines.join("\n");
}

export function renderTrialDetail(report: EvalReport): string {
  const lines: string[] = [];
  lines.push(`${report.model} on ${report.condition}: macro F1 ${fmt(report.macroF1.mean, report.macroF1.std)} over ${report.trials.length} trials`);
  lines.push(
    `  config: epochs=${report.config.epochs} lr=${report.config.learningRate} ` +
      `wd=${report.config.weightDecay} batch=${report.config.batchSize} ` +
      `patience=${report.config.earlyStoppingPatience} baseSeed=${report.config.baseSeed}`,
  );
  for (const t of report.trials) {
    lines.push(
      `  trial ${t.trial} (seed ${t.seed}): macroF1=${t.macroF1.toFixed(4)} ` +
        `epochs=${t.epochsRun} best=${t.bestEpoch}`,
    );
    lines.push(
      `    per-class F1: ` +
        report.labelNames.map((n, i) => `${n}=${t.perClassF1[i].toFixed(3)}`).join(" "),
    );
  }
  return lines.join("\n");
}
