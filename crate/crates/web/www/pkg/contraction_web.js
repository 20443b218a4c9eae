/* @ts-self-types="./contraction_web.d.ts" */

export class CpnSearch {
    static __wrap(ptr) {
        const obj = Object.create(CpnSearch.prototype);
        obj.__wbg_ptr = ptr;
        CpnSearchFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        CpnSearchFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_cpnsearch_free(ptr, 0);
    }
    /**
     * Moduli of the maximizer's coefficients.
     * @returns {Float64Array}
     */
    get bestCoeffs() {
        const ret = wasm.cpnsearch_bestCoeffs(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    get bestValue() {
        const ret = wasm.cpnsearch_bestValue(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get distanceToConstant() {
        const ret = wasm.cpnsearch_distanceToConstant(this.__wbg_ptr);
        return ret;
    }
    /**
     * Final `‖q‖_{H^p}` of each restart, in restart order.
     * @returns {Float64Array}
     */
    get restartValues() {
        const ret = wasm.cpnsearch_restartValues(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) CpnSearch.prototype[Symbol.dispose] = CpnSearch.prototype.free;

export class NormRatio {
    static __wrap(ptr) {
        const obj = Object.create(NormRatio.prototype);
        obj.__wbg_ptr = ptr;
        NormRatioFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        NormRatioFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_normratio_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get dirichlet() {
        const ret = wasm.__wbg_get_normratio_dirichlet(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get est_error() {
        const ret = wasm.__wbg_get_normratio_est_error(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get hardy() {
        const ret = wasm.__wbg_get_normratio_hardy(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get ratio() {
        const ret = wasm.__wbg_get_normratio_ratio(this.__wbg_ptr);
        return ret;
    }
    /**
     * @param {number} arg0
     */
    set dirichlet(arg0) {
        wasm.__wbg_set_normratio_dirichlet(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set est_error(arg0) {
        wasm.__wbg_set_normratio_est_error(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set hardy(arg0) {
        wasm.__wbg_set_normratio_hardy(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set ratio(arg0) {
        wasm.__wbg_set_normratio_ratio(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) NormRatio.prototype[Symbol.dispose] = NormRatio.prototype.free;

export class ScanCurve {
    static __wrap(ptr) {
        const obj = Object.create(ScanCurve.prototype);
        obj.__wbg_ptr = ptr;
        ScanCurveFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        ScanCurveFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_scancurve_free(ptr, 0);
    }
    /**
     * @returns {Float64Array}
     */
    get eps() {
        const ret = wasm.scancurve_eps(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number | undefined}
     */
    get firstViolation() {
        const ret = wasm.scancurve_firstViolation(this.__wbg_ptr);
        return ret[0] === 0 ? undefined : ret[1];
    }
    /**
     * `‖P_+F_ε‖_{A²_α} / ‖F_ε‖_{L^{p'}}` at each grid point.
     * @returns {Float64Array}
     */
    get ratio() {
        const ret = wasm.scancurve_ratio(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) ScanCurve.prototype[Symbol.dispose] = ScanCurve.prototype.free;

/**
 * Multi-restart ascent for the largest `‖q‖_{H^p}` over `D_{p/2}`-normalized polynomials of degree `n`.
 * @param {number} p
 * @param {number} n
 * @param {number} restarts
 * @param {number} seed
 * @returns {CpnSearch}
 */
export function cpnSearch(p, n, restarts, seed) {
    const ret = wasm.cpnSearch(p, n, restarts, seed);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return CpnSearch.__wrap(ret[0]);
}

/**
 * Ratio curve of the Riesz projection test family over `points` values of ε.
 * @param {number} p
 * @param {number} alpha
 * @param {number} points
 * @returns {ScanCurve}
 */
export function epsilonScan(p, alpha, points) {
    const ret = wasm.epsilonScan(p, alpha, points);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return ScanCurve.__wrap(ret[0]);
}

/**
 * `‖f‖_{H^p} / ‖f‖_{D_{p/2}}` for `f(z) = Σ (re_k + i im_k) z^k`.
 * @param {Float64Array} re
 * @param {Float64Array} im
 * @param {number} p
 * @returns {NormRatio}
 */
export function normRatio(re, im, p) {
    const ptr0 = passArrayF64ToWasm0(re, wasm.__wbindgen_malloc);
    const len0 = WASM_VECTOR_LEN;
    const ptr1 = passArrayF64ToWasm0(im, wasm.__wbindgen_malloc);
    const len1 = WASM_VECTOR_LEN;
    const ret = wasm.normRatio(ptr0, len0, ptr1, len1, p);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return NormRatio.__wrap(ret[0]);
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./contraction_web_bg.js": import0,
    };
}

const CpnSearchFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_cpnsearch_free(ptr, 1));
const NormRatioFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_normratio_free(ptr, 1));
const ScanCurveFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_scancurve_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function passArrayF64ToWasm0(arg, malloc) {
    const ptr = malloc(arg.length * 8, 8) >>> 0;
    getFloat64ArrayMemory0().set(arg, ptr / 8);
    WASM_VECTOR_LEN = arg.length;
    return ptr;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let WASM_VECTOR_LEN = 0;

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('contraction_web_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
