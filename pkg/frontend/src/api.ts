// Typed client for the plenodesign HTTP service. The UI never computes
// geometry; everything it displays comes back through these calls.

export type LengthValue = number | "Infinity";

export interface ParameterSet {
  pixel_pitch: number;
  micro_lens_pitch: number;
  micro_lens_focal: number;
  micro_image_resolution: number;
  main_lens_focal: number;
  hiatus: number;
  exit_pupil_distance: number;
  focus_distance?: number;
  image_distance?: number;
}

export interface RefocusEntry {
  a: number;
  d_a_prime?: number;
  b_a: number;
  y?: number;
  d_a_from_h1u?: LengthValue;
  d_a_from_mla?: LengthValue;
  dof_near_from_h1u?: LengthValue;
  dof_near_from_mla?: LengthValue;
  dof_far_from_h1u?: LengthValue;
  dof_far_from_mla?: LengthValue;
  error?: string;
}

export interface DepthPlane {
  dx: number;
  Z_from_h1u?: LengthValue;
  Z_from_mla?: LengthValue;
  error?: string;
}

export interface TriangulationOutput {
  G: number;
  B_G: number;
  z_pupil_from_h1u: number;
  z_pupil_from_mla: number;
  planes: DepthPlane[];
}

export interface SceneElement {
  id: string;
  type: "plane" | "ray-segment" | "point" | "label";
  label?: string;
  z?: number;
  from?: [number, number];
  to?: [number, number];
  at?: [number, number];
  degenerate?: boolean;
}

export interface SceneDoc {
  version: string;
  units: string;
  kind: "refocus-section" | "triangulation-3d";
  elements: SceneElement[];
}

export interface RefocusResponse {
  ok: boolean;
  result: RefocusEntry[];
  scene?: SceneDoc;
  error?: { name: string; message: string };
}

export interface TriangulateResponse {
  ok: boolean;
  result: TriangulationOutput;
  scene?: SceneDoc;
  error?: { name: string; message: string };
}

/** Non-2xx/422 response carrying the service's structured error. */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly errorName: string,
    message: string,
  ) {
    super(message);
  }
}

async function parseOrThrow(response: Response): Promise<any> {
  const body = await response.json();
  // 422 is a computed series with degenerate elements: still a result
  if (response.ok || response.status === 422) return body;
  const error = body?.error ?? { name: "UnknownError", message: `HTTP ${response.status}` };
  throw new ApiError(response.status, error.name, error.message);
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  async getDefaults(signal?: AbortSignal): Promise<ParameterSet> {
    const response = await fetch(`${this.baseUrl}/api/v1/defaults`, { signal });
    const body = await parseOrThrow(response);
    return body.result as ParameterSet;
  }

  async postRefocus(
    config: ParameterSet,
    aList: number[],
    includeScene = true,
    signal?: AbortSignal,
  ): Promise<RefocusResponse> {
    return this.post(
      "/api/v1/refocus",
      { config, a_list: aList, include_scene: includeScene },
      signal,
    ) as Promise<RefocusResponse>;
  }

  async postTriangulate(
    config: ParameterSet,
    gap: number,
    dxList: number[],
    includeScene = true,
    signal?: AbortSignal,
  ): Promise<TriangulateResponse> {
    return this.post(
      "/api/v1/triangulate",
      { config, G: gap, dx_list: dxList, include_scene: includeScene },
      signal,
    ) as Promise<TriangulateResponse>;
  }

  private async post(path: string, payload: unknown, signal?: AbortSignal): Promise<unknown> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
      signal,
    });
    return parseOrThrow(response);
  }
}
