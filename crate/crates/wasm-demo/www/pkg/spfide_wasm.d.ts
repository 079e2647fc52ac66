/* tslint:disable */
/* eslint-disable */

export class Mesh {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    nodes(): Float64Array;
    readonly h_coarse: number;
    readonly h_fine: number;
    readonly rho: number;
}

export class Profile {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    exact(): Float64Array;
    nodes(): Float64Array;
    y(): Float64Array;
    readonly max_error: number;
    readonly rho: number;
}

/**
 * Errors and rates laid out row-major, one row per ε.
 */
export class Study {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    epsilons(): Float64Array;
    errors(): Float64Array;
    ns(): Uint32Array;
    /**
     * `NaN` where no rate is defined (last column, non-doubling steps).
     */
    rates(): Float64Array;
    uniform_errors(): Float64Array;
}

export function mesh(k: number, n: number): Mesh;

export function profile(problem: string, k: number, n: number): Profile;

export function study(problem: string, exponents: Int32Array, ns: Uint32Array): Study;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_mesh_free: (a: number, b: number) => void;
    readonly __wbg_profile_free: (a: number, b: number) => void;
    readonly __wbg_study_free: (a: number, b: number) => void;
    readonly mesh: (a: number, b: number) => [number, number, number];
    readonly mesh_h_coarse: (a: number) => number;
    readonly mesh_h_fine: (a: number) => number;
    readonly mesh_nodes: (a: number) => [number, number];
    readonly mesh_rho: (a: number) => number;
    readonly profile: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly profile_exact: (a: number) => [number, number];
    readonly profile_max_error: (a: number) => number;
    readonly profile_nodes: (a: number) => [number, number];
    readonly profile_rho: (a: number) => number;
    readonly profile_y: (a: number) => [number, number];
    readonly study: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly study_epsilons: (a: number) => [number, number];
    readonly study_errors: (a: number) => [number, number];
    readonly study_ns: (a: number) => [number, number];
    readonly study_rates: (a: number) => [number, number];
    readonly study_uniform_errors: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
