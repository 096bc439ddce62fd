import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { Debouncer } from "../src/debounce.js";

describe("Debouncer", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("collapses a burst into a single trailing call", () => {
    const debouncer = new Debouncer<string>(150);
    const calls: number[] = [];
    for (let i = 0; i < 10; i++) {
      debouncer.debounce("refocus", () => calls.push(i));
      vi.advanceTimersByTime(50); // keep re-arming inside the window
    }
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(150);
    expect(calls).toEqual([9]);
  });

  it("fires nothing before the window elapses", () => {
    const debouncer = new Debouncer<string>(150);
    const op = vi.fn();
    debouncer.debounce("k", op);
    vi.advanceTimersByTime(149);
    expect(op).not.toHaveBeenCalled();
    vi.advanceTimersByTime(1);
    expect(op).toHaveBeenCalledTimes(1);
  });

  it("tracks keys independently", () => {
    const debouncer = new Debouncer<string>(150);
    const a = vi.fn();
    const b = vi.fn();
    debouncer.debounce("a", a);
    vi.advanceTimersByTime(100);
    debouncer.debounce("b", b);
    vi.advanceTimersByTime(50);
    expect(a).toHaveBeenCalledTimes(1); // its own 150 ms elapsed
    expect(b).not.toHaveBeenCalled(); // only 50 ms into its window
    vi.advanceTimersByTime(100);
    expect(b).toHaveBeenCalledTimes(1);
  });

  it("cancel drops the pending call for that key only", () => {
    const debouncer = new Debouncer<string>(150);
    const a = vi.fn();
    const b = vi.fn();
    debouncer.debounce("a", a);
    debouncer.debounce("b", b);
    debouncer.cancel("a");
    vi.advanceTimersByTime(200);
    expect(a).not.toHaveBeenCalled();
    expect(b).toHaveBeenCalledTimes(1);
  });

  it("cancelAll drops everything", () => {
    const debouncer = new Debouncer<string>(150);
    const op = vi.fn();
    debouncer.debounce("a", op);
    debouncer.debounce("b", op);
    debouncer.cancelAll();
    vi.advanceTimersByTime(500);
    expect(op).not.toHaveBeenCalled();
  });

  it("uses the configured window length", () => {
    const debouncer = new Debouncer<string>(30);
    const op = vi.fn();
    debouncer.debounce("k", op);
    vi.advanceTimersByTime(30);
    expect(op).toHaveBeenCalledTimes(1);
  });
});
