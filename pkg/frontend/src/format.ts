/** Display formatting. Purely presentational: no risk arithmetic. */

/** Dollars shown in millions at 3 significant figures, e.g. "$5,380M". */
export function money(dollars: number): string {
  const millions = Number((dollars / 1e6).toPrecision(3));
  return `$${millions.toLocaleString("en-US", { maximumFractionDigits: 6 })}M`;
}

/** Full-precision dollars for hover titles. */
export function moneyFull(dollars: number): string {
  return `$${dollars.toLocaleString("en-US", { maximumFractionDigits: 2 })}`;
}

export function idList(ids: number[]): string {
  return ids.length ? ids.join(", ") : "(none)";
}
