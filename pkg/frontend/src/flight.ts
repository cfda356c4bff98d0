// At most one recognition request is in flight; strokes drawn while the
// service is busy wait their turn and are submitted in draw order.

export class RequestQueue<T, R> {
  private waiting: T[] = [];
  private busy = false;

  constructor(
    private run: (job: T) => Promise<R>,
    private done: (job: T, result: R) => void,
    private fail: (job: T, err: unknown) => void,
  ) {}

  get pending(): number {
    return this.waiting.length + (this.busy ? 1 : 0);
  }

  push(job: T): void {
    this.waiting.push(job);
    void this.drain();
  }

  private async drain(): Promise<void> {
    if (this.busy) {
      return;
    }
    this.busy = true;
    while (this.waiting.length > 0) {
      const job = this.waiting.shift()!;
      try {
        const result = await this.run(job);
        this.done(job, result);
      } catch (err) {
        this.fail(job, err);
      }
    }
    this.busy = false;
  }
}
