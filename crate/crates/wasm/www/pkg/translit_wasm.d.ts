/* tslint:disable */
/* eslint-disable */

/**
 * Balance plan for `language amount` lines.
 */
export function balance(amounts: string, cap: number): string;

/**
 * k-best romanizations for every whitespace-separated token of `text`.
 */
export function romanize(text: string, k: number): string;

/**
 * Native words of the sample lexicons as `[[language, word], ...]`.
 */
export function sample_words(): string;

/**
 * Plain and transliteration-optimized WER for one utterance, with the
 * relaxed alignment.
 */
export function score(reference: string, hypothesis: string, k: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly balance: (a: number, b: number, c: number) => [number, number];
    readonly romanize: (a: number, b: number, c: number) => [number, number];
    readonly sample_words: () => [number, number];
    readonly score: (a: number, b: number, c: number, d: number, e: number) => [number, number];
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
