/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_mesh_free: (a: number, b: number) => void;
export const __wbg_profile_free: (a: number, b: number) => void;
export const __wbg_study_free: (a: number, b: number) => void;
export const mesh: (a: number, b: number) => [number, number, number];
export const mesh_h_coarse: (a: number) => number;
export const mesh_h_fine: (a: number) => number;
export const mesh_nodes: (a: number) => [number, number];
export const mesh_rho: (a: number) => number;
export const profile: (a: number, b: number, c: number, d: number) => [number, number, number];
export const profile_exact: (a: number) => [number, number];
export const profile_max_error: (a: number) => number;
export const profile_nodes: (a: number) => [number, number];
export const profile_rho: (a: number) => number;
export const profile_y: (a: number) => [number, number];
export const study: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const study_epsilons: (a: number) => [number, number];
export const study_errors: (a: number) => [number, number];
export const study_ns: (a: number) => [number, number];
export const study_rates: (a: number) => [number, number];
export const study_uniform_errors: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
