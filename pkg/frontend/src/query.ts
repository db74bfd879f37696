/** URL query parsing for the play page: ?boss=N&seed=S with safe defaults. */

export interface ParsedQuery {
  boss: number;
  seed: number;
}

export function parseQuery(search: string): ParsedQuery {
  const params = new URLSearchParams(search);
  const boss = Number(params.get("boss") ?? "1");
  const seed = Number(params.get("seed") ?? "0");
  return {
    boss: Number.isInteger(boss) && boss >= 1 && boss <= 8 ? boss : 1,
    seed: Number.isFinite(seed) ? Math.floor(seed) : 0,
  };
}
