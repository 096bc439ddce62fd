// Design session: parameter state, client-side validation, and live
// recomputation against the service. The session owns no geometry;
// results and scenes are stored exactly as the service returned them.

import {
  ApiClient,
  ApiError,
  ParameterSet,
  RefocusResponse,
  SceneDoc,
  TriangulateResponse,
} from "./api.js";
import { Debouncer } from "./debounce.js";

export type NumericField = keyof ParameterSet;

const POSITIVE_FIELDS: NumericField[] = [
  "pixel_pitch",
  "micro_lens_pitch",
  "micro_lens_focal",
  "main_lens_focal",
  "exit_pupil_distance",
];

/** Mirror of the service's config rules, so bad entries never leave the
 * browser. The service stays the authority; this only gates requests. */
export function validateParameter(
  field: NumericField,
  value: number,
  params: ParameterSet,
): string | null {
  if (!Number.isFinite(value)) return "must be a finite number";
  if (POSITIVE_FIELDS.includes(field) && value <= 0) return "must be positive";
  if (field === "micro_image_resolution") {
    if (!Number.isInteger(value)) return "must be an integer";
    if (value < 2) return "needs at least 2 pixels per micro image";
  }
  if (field === "focus_distance" || field === "image_distance") {
    if (value <= 0) return "must be positive";
    if (value <= params.main_lens_focal) {
      return `must exceed the main lens focal length (${params.main_lens_focal} mm)`;
    }
  }
  if (field === "main_lens_focal") {
    const focus = params.focus_distance ?? params.image_distance;
    if (focus !== undefined && focus <= value) {
      return "focal length must stay below the focus distance";
    }
  }
  return null;
}

export interface SessionState {
  params: ParameterSet | null;
  /** parameter fields plus the "gap" and "dx" controls */
  fieldErrors: Record<string, string>;
  aList: number[];
  gap: number;
  dxList: number[];
  refocus: RefocusResponse | null;
  refocusScene: SceneDoc | null;
  triangulation: TriangulateResponse | null;
  triangulationScene: SceneDoc | null;
  banner: string | null;
  pending: number;
}

type Listener = (state: SessionState) => void;
type Endpoint = "refocus" | "triangulate";

export class DesignSession {
  readonly state: SessionState = {
    params: null,
    fieldErrors: {},
    aList: [1.0],
    gap: 1,
    dxList: [0.0, 1.0],
    refocus: null,
    refocusScene: null,
    triangulation: null,
    triangulationScene: null,
    banner: null,
    pending: 0,
  };

  private listeners: Listener[] = [];
  private debouncer: Debouncer<Endpoint>;
  // latest-wins: responses to superseded requests are dropped
  private sequence: Record<Endpoint, number> = { refocus: 0, triangulate: 0 };
  // at most one request in flight per endpoint; newer ones abort older
  private inFlight: Record<Endpoint, AbortController | null> = {
    refocus: null,
    triangulate: null,
  };

  constructor(private readonly api: ApiClient, debounceMs = 150) {
    this.debouncer = new Debouncer(debounceMs);
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  /** Load defaults and populate both views (not debounced). */
  async init(): Promise<void> {
    try {
      this.state.params = await this.api.getDefaults();
    } catch (error) {
      this.state.banner = describeFailure(error);
      this.notify();
      return;
    }
    this.notify();
    await Promise.all([this.issue("refocus"), this.issue("triangulate")]);
  }

  /** Validate and stage one parameter; a valid value schedules one
   * debounced recomputation, an invalid one flags the field and issues
   * no request at all. */
  setParameter(field: NumericField, raw: string | number): void {
    if (this.state.params === null) return;
    const value = typeof raw === "number" ? raw : Number(raw);
    const problem =
      typeof raw === "string" && raw.trim() === ""
        ? "must be a finite number"
        : validateParameter(field, value, this.state.params);
    if (problem !== null) {
      this.state.fieldErrors[field] = problem;
      this.notify();
      return;
    }
    delete this.state.fieldErrors[field];
    // the two ways of fixing focus are mutually exclusive
    if (field === "focus_distance") delete this.state.params.image_distance;
    if (field === "image_distance") delete this.state.params.focus_distance;
    this.state.params[field] = value;
    this.notify();
    this.schedule("refocus");
    this.schedule("triangulate");
  }

  setShift(a: number): void {
    if (!Number.isFinite(a)) return;
    this.state.aList = [a];
    this.notify();
    this.schedule("refocus");
  }

  setGap(gap: number): void {
    if (!Number.isInteger(gap) || gap === 0) {
      this.state.fieldErrors["gap"] = "gap must be a nonzero integer";
      this.notify();
      return;
    }
    delete this.state.fieldErrors["gap"];
    this.state.gap = gap;
    this.notify();
    this.schedule("triangulate");
  }

  setDisparities(dxList: number[]): void {
    if (dxList.length === 0 || dxList.some((dx) => !Number.isFinite(dx))) {
      this.state.fieldErrors["dx"] = "give at least one finite disparity";
      this.notify();
      return;
    }
    delete this.state.fieldErrors["dx"];
    this.state.dxList = dxList;
    this.notify();
    this.schedule("triangulate");
  }

  private schedule(endpoint: Endpoint): void {
    this.debouncer.debounce(endpoint, () => void this.issue(endpoint));
  }

  private async issue(endpoint: Endpoint): Promise<void> {
    if (this.state.params === null) return;
    const seq = ++this.sequence[endpoint];
    this.inFlight[endpoint]?.abort(); // seq already moved on, so no banner
    const controller = new AbortController();
    this.inFlight[endpoint] = controller;
    this.state.pending += 1;
    this.notify();
    try {
      if (endpoint === "refocus") {
        const response = await this.api.postRefocus(
          this.state.params,
          this.state.aList,
          true,
          controller.signal,
        );
        if (seq !== this.sequence[endpoint]) return;
        this.state.refocus = response;
        this.state.refocusScene = response.scene ?? null;
      } else {
        const response = await this.api.postTriangulate(
          this.state.params,
          this.state.gap,
          this.state.dxList,
          true,
          controller.signal,
        );
        if (seq !== this.sequence[endpoint]) return;
        this.state.triangulation = response;
        this.state.triangulationScene = response.scene ?? null;
      }
      this.state.banner = null;
    } catch (error) {
      if (seq !== this.sequence[endpoint]) return;
      this.state.banner = describeFailure(error);
    } finally {
      if (this.inFlight[endpoint] === controller) this.inFlight[endpoint] = null;
      this.state.pending -= 1;
      this.notify();
    }
  }
}

function describeFailure(error: unknown): string {
  if (error instanceof ApiError) {
    return `${error.errorName}: ${error.message}`;
  }
  return "service unreachable; results may be stale";
}
