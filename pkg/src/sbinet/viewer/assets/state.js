/**
 * Selection state: per-chart node-key selections whose intersection filters
 * every derived view.  All operations return new state; renders are pure
 * functions of (bundle, state), so clearing restores the initial output
 * exactly.
 */
export const EMPTY_STATE = { selections: new Map() };
export function applySelection(state, objectId, label, keys) {
    const next = new Map(state.selections);
    const keySet = new Set(keys);
    const existing = next.get(objectId);
    if (existing && existing.label === label && sameSet(existing.keys, keySet)) {
        next.delete(objectId); // toggling the same mark clears that chart's filter
    }
    else {
        next.set(objectId, { label, keys: keySet });
    }
    return { selections: next };
}
export function clearSelection(state, objectId) {
    if (objectId === undefined)
        return EMPTY_STATE;
    const next = new Map(state.selections);
    next.delete(objectId);
    return { selections: next };
}
/** Intersection of every active selection; null means "no filter". */
export function effectiveKeys(state) {
    let out = null;
    for (const sel of state.selections.values()) {
        if (out === null) {
            out = new Set(sel.keys);
        }
        else {
            for (const k of out)
                if (!sel.keys.has(k))
                    out.delete(k);
        }
    }
    return out;
}
export function activeFilters(state) {
    return [...state.selections.entries()].map(([objectId, sel]) => ({
        objectId,
        label: sel.label,
    }));
}
function sameSet(a, b) {
    if (a.size !== b.size)
        return false;
    for (const x of a)
        if (!b.has(x))
            return false;
    return true;
}
