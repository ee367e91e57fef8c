// Deterministic force-directed layout: seeded placement, then a fixed number
// of repulsion/spring iterations. Same input and seed, same picture.

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations: number;
  seed: number;
}

const DEFAULTS: LayoutOptions = { width: 640, height: 420, iterations: 120, seed: 7 };

/** mulberry32: tiny seeded PRNG, plenty for layout jitter. */
export function seededRandom(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function computeLayout(
  nodeIds: readonly string[],
  edges: ReadonlyArray<readonly [string, string]>,
  options: Partial<LayoutOptions> = {},
): Map<string, Point> {
  const { width, height, iterations, seed } = { ...DEFAULTS, ...options };
  const ids = [...nodeIds].sort();
  const random = seededRandom(seed);
  const positions = new Map<string, Point>();
  for (const id of ids) {
    positions.set(id, {
      x: width * (0.15 + 0.7 * random()),
      y: height * (0.15 + 0.7 * random()),
    });
  }
  if (ids.length <= 1) return positions;

  const springLength = Math.min(width, height) / Math.max(2, Math.sqrt(ids.length));
  const links: Array<[Point, Point]> = [];
  for (const [a, b] of edges) {
    const pa = positions.get(a);
    const pb = positions.get(b);
    if (pa && pb && pa !== pb) links.push([pa, pb]);
  }

  const points = ids.map((id) => positions.get(id)!);
  for (let step = 0; step < iterations; step++) {
    const heat = 1 - step / iterations;
    // pairwise repulsion
    for (let i = 0; i < points.length; i++) {
      for (let j = i + 1; j < points.length; j++) {
        const p = points[i]!;
        const q = points[j]!;
        let dx = p.x - q.x;
        let dy = p.y - q.y;
        const dsq = Math.max(dx * dx + dy * dy, 0.01);
        const force = (springLength * springLength) / dsq;
        const scale = Math.min(force, 8) * heat;
        const d = Math.sqrt(dsq);
        dx /= d;
        dy /= d;
        p.x += dx * scale;
        p.y += dy * scale;
        q.x -= dx * scale;
        q.y -= dy * scale;
      }
    }
    // spring attraction along edges
    for (const [pa, pb] of links) {
      const dx = pb.x - pa.x;
      const dy = pb.y - pa.y;
      const d = Math.max(Math.sqrt(dx * dx + dy * dy), 0.01);
      const pull = ((d - springLength) / d) * 0.05 * heat;
      pa.x += dx * pull;
      pa.y += dy * pull;
      pb.x -= dx * pull;
      pb.y -= dy * pull;
    }
    // keep everything on canvas
    for (const p of points) {
      p.x = Math.min(Math.max(p.x, 12), width - 12);
      p.y = Math.min(Math.max(p.y, 12), height - 12);
    }
  }
  return positions;
}
