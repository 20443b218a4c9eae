/* tslint:disable */
/* eslint-disable */

export class CpnSearch {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Moduli of the maximizer's coefficients.
     */
    readonly bestCoeffs: Float64Array;
    readonly bestValue: number;
    readonly distanceToConstant: number;
    /**
     * Final `‖q‖_{H^p}` of each restart, in restart order.
     */
    readonly restartValues: Float64Array;
}

export class NormRatio {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    dirichlet: number;
    est_error: number;
    hardy: number;
    ratio: number;
}

export class ScanCurve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly eps: Float64Array;
    readonly firstViolation: number | undefined;
    /**
     * `‖P_+F_ε‖_{A²_α} / ‖F_ε‖_{L^{p'}}` at each grid point.
     */
    readonly ratio: Float64Array;
}

/**
 * Multi-restart ascent for the largest `‖q‖_{H^p}` over `D_{p/2}`-normalized polynomials of degree `n`.
 */
export function cpnSearch(p: number, n: number, restarts: number, seed: number): CpnSearch;

/**
 * Ratio curve of the Riesz projection test family over `points` values of ε.
 */
export function epsilonScan(p: number, alpha: number, points: number): ScanCurve;

/**
 * `‖f‖_{H^p} / ‖f‖_{D_{p/2}}` for `f(z) = Σ (re_k + i im_k) z^k`.
 */
export function normRatio(re: Float64Array, im: Float64Array, p: number): NormRatio;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_cpnsearch_free: (a: number, b: number) => void;
    readonly __wbg_get_normratio_dirichlet: (a: number) => number;
    readonly __wbg_get_normratio_est_error: (a: number) => number;
    readonly __wbg_get_normratio_hardy: (a: number) => number;
    readonly __wbg_get_normratio_ratio: (a: number) => number;
    readonly __wbg_normratio_free: (a: number, b: number) => void;
    readonly __wbg_scancurve_free: (a: number, b: number) => void;
    readonly __wbg_set_normratio_dirichlet: (a: number, b: number) => void;
    readonly __wbg_set_normratio_est_error: (a: number, b: number) => void;
    readonly __wbg_set_normratio_hardy: (a: number, b: number) => void;
    readonly __wbg_set_normratio_ratio: (a: number, b: number) => void;
    readonly cpnSearch: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly cpnsearch_bestCoeffs: (a: number) => [number, number];
    readonly cpnsearch_bestValue: (a: number) => number;
    readonly cpnsearch_distanceToConstant: (a: number) => number;
    readonly cpnsearch_restartValues: (a: number) => [number, number];
    readonly epsilonScan: (a: number, b: number, c: number) => [number, number, number];
    readonly normRatio: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly scancurve_eps: (a: number) => [number, number];
    readonly scancurve_firstViolation: (a: number) => [number, number];
    readonly scancurve_ratio: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
