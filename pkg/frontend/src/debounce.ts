/** Trailing-edge debouncer keyed by channel, so the refocus and
 * triangulation endpoints collapse bursts independently. */
export class Debouncer<K> {
  private handles = new Map<K, ReturnType<typeof setTimeout>>();

  constructor(public windowMs = 150) {}

  debounce(key: K, op: () => void): void {
    const pending = this.handles.get(key);
    if (pending !== undefined) clearTimeout(pending);
    this.handles.set(
      key,
      setTimeout(() => {
        this.handles.delete(key);
        op();
      }, this.windowMs),
    );
  }

  cancel(key: K): void {
    const pending = this.handles.get(key);
    if (pending !== undefined) {
      clearTimeout(pending);
      this.handles.delete(key);
    }
  }

  cancelAll(): void {
    for (const handle of this.handles.values()) clearTimeout(handle);
    this.handles.clear();
  }
}
