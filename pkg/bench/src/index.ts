export { majorityBaseline, uniformRandomBaseline, type BaselineReport } from "./baseline.js";
export { loadCorpus, spinFieldFromPixels, subsample, type Corpus, type Example } from "./corpus.js";
export { batchTensor, predict, runBenchmark, type EvalReport, type TrialResult } from "./evaluate.js";
export { binForTemperature, loadManifest, verifyManifest, type Manifest, type ManifestConfig, type ManifestRecord } from "./manifest.js";
export { confusionMatrix, macroF1, meanStd, perClassF1, type ScoreSummary } from "./metrics.js";
export { createModel, type ClassifierModel, type ModelKind, type ModelMeta } from "./model.js";
export { decodePng, type RgbImage } from "./png.js";
export { deriveSeed, SplitMix } from "./rng.js";
export { renderSummaryTable, renderTrialDetail } from "./report.js";
export { EarlyStopper, PROTOCOL_DEFAULTS, datasetLoss, train, type TrainConfig, type TrainResult } from "./train.js";
