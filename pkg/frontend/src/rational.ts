// Rendering helpers for the service's rational strings. Parsing "p/q" into
// a float for display is presentation, not game math: admissibility,
// payoffs, and distributions always come from the service.

export function parseRational(text: string): number {
    const parts = text.split("/");
    if (parts.length === 1) {
        const value = Number(parts[0]);
        if (!Number.isFinite(value)) {
            throw new Error(`not a rational: ${text}`);
        }
        return value;
    }
    if (parts.length !== 2) {
        throw new Error(`not a rational: ${text}`);
    }
    const num = Number(parts[0]);
    const den = Number(parts[1]);
    if (!Number.isFinite(num) || !Number.isFinite(den) || den === 0) {
        throw new Error(`not a rational: ${text}`);
    }
    return num / den;
}

/** Four-decimal rendering used by probability displays ("1/3" -> "0.3333"). */
export function formatProbability(exact: string): string {
    return parseRational(exact).toFixed(4);
}
