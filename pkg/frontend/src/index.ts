export {
  Dataset, MatrixDataset, column, parseDatasetCsv, parseDatasetJson,
  parseHeaderPairs, parseMatrixCsv, readDataset, readMatrix, requireColumns,
} from "./contract.js";
export {
  FIGURE_KINDS, FigureJob, FigureKind, SidecarMeta, loadSidecar, sidecarPath,
  validateJob,
} from "./job.js";
export { renderFigure } from "./render.js";
