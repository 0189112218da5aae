/* tslint:disable */
/* eslint-disable */

/**
 * Full analysis of a germ file; `d` is an integer, `empty` or `auto-bigerm`.
 */
export function analyze_germ(germ: string, d: string): string;

/**
 * Jordan block bounds in degree `ell`.
 */
export function bounds(n: number, p: number, ell: number, isolated: boolean): string;

/**
 * Vanishing windows for source dimension `n`, target dimension `p` and
 * instability dimension `d` (an integer or `empty`).
 */
export function degree_windows(n: number, p: number, d: string): string;

/**
 * Jordan data of a matrix given as JSON rows of rational strings.
 */
export function jordan(matrix: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze_germ: (a: number, b: number, c: number, d: number) => [number, number];
    readonly bounds: (a: number, b: number, c: number, d: number) => [number, number];
    readonly degree_windows: (a: number, b: number, c: number, d: number) => [number, number];
    readonly jordan: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
