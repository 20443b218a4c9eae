/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_cpnsearch_free: (a: number, b: number) => void;
export const __wbg_get_normratio_dirichlet: (a: number) => number;
export const __wbg_get_normratio_est_error: (a: number) => number;
export const __wbg_get_normratio_hardy: (a: number) => number;
export const __wbg_get_normratio_ratio: (a: number) => number;
export const __wbg_normratio_free: (a: number, b: number) => void;
export const __wbg_scancurve_free: (a: number, b: number) => void;
export const __wbg_set_normratio_dirichlet: (a: number, b: number) => void;
export const __wbg_set_normratio_est_error: (a: number, b: number) => void;
export const __wbg_set_normratio_hardy: (a: number, b: number) => void;
export const __wbg_set_normratio_ratio: (a: number, b: number) => void;
export const cpnSearch: (a: number, b: number, c: number, d: number) => [number, number, number];
export const cpnsearch_bestCoeffs: (a: number) => [number, number];
export const cpnsearch_bestValue: (a: number) => number;
export const cpnsearch_distanceToConstant: (a: number) => number;
export const cpnsearch_restartValues: (a: number) => [number, number];
export const epsilonScan: (a: number, b: number, c: number) => [number, number, number];
export const normRatio: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const scancurve_eps: (a: number) => [number, number];
export const scancurve_firstViolation: (a: number) => [number, number];
export const scancurve_ratio: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_start: () => void;
