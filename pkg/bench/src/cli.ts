/**
 * bench CLI.
 *
 *   node dist/cli.js run --manifest corpus/periodic_ferro/manifest.json \
 *       [--model linear-probe] [--trials 5] [--epochs 10] [--lr 0.05] \
 *       [--wd 5e-6] [--batch 32] [--patience 2] [--seed 2021] [--out report.txt]
 *   node dist/cli.js baseline --manifest corpus/periodic_ferro/manifest.json
 */

import { writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import process from "node:process";

import { majorityBaseline, uniformRandomBaseline } from "./baseline.js";
import { loadCorpus } from "./corpus.js";
import { runBenchmark } from "./evaluate.js";
import type { ModelKind } from "./model.js";
import { renderSummaryTable, renderTrialDetail } from "./report.js";
import { PROTOCOL_DEFAULTS, type TrainConfig } from "./train.js";

function usage(): never {
  console.error("usage: bench <run|baseline> --manifest <path> [options]");
  process.exit(2);
}

export function main(argv: string[]): number {
  const [command, ...rest] = argv;
  if (command !== "run" && command !== "baseline") usage();
  const { values } = parseArgs({
    args: rest,
    options: {
      manifest: { type: "string" },
      model: { type: "string", default: PROTOCOL_DEFAULTS.model },
      trials: { type: "string" },
      epochs: { type: "string" },
      lr: { type: "string" },
      wd: { type: "string" },
      batch: { type: "string" },
      patience: { type: "string" },
      seed: { type: "string" },
      out: { type: "string" },
    },
  });
  if (!values.manifest) usage();

  const corpus = loadCorpus(values.manifest);
  const baselines = [majorityBaseline(corpus), uniformRandomBaseline(corpus)];
  if (command === "baseline") {
    console.log(renderSummaryTable([], baselines));
    return 0;
  }

  const config: TrainConfig = {
    ...PROTOCOL_DEFAULTS,
    model: (values.model as ModelKind) ?? PROTOCOL_DEFAULTS.model,
    trials: values.trials ? Number(values.trials) : PROTOCOL_DEFAULTS.trials,
    epochs: values.epochs ? Number(values.epochs) : PROTOCOL_DEFAULTS.epochs,
    learningRate: values.lr ? Number(values.lr) : PROTOCOL_DEFAULTS.learningRate,
    weightDecay: values.wd ? Number(values.wd) : PROTOCOL_DEFAULTS.weightDecay,
    batchSize: values.batch ? Number(values.batch) : PROTOCOL_DEFAULTS.batchSize,
    earlyStoppingPatience: values.patience
      ? Number(values.patience)
      : PROTOCOL_DEFAULTS.earlyStoppingPatience,
    baseSeed: values.seed ? Number(values.seed) : PROTOCOL_DEFAULTS.baseSeed,
  };
  const { report } = runBenchmark(corpus, config);
  const text = [
    renderSummaryTable([report], baselines),
    "",
    renderTrialDetail(report),
    "",
  ].join("\n");
  if (values.out) {
    writeFileSync(values.out, text);
  }
  console.log(text);
  return 0;
}

const isMain = process.argv[1] && import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (isMain) {
  try {
    process.exit(main(process.argv.slice(2)));
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    process.exit(1);
  }
}
