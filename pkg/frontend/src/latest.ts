// Latest-wins guard for in-flight requests: whenever a newer task has
// been started, results (and errors) of older ones are discarded.

export class LatestWins {
  private seq = 0;

  async run<T>(task: () => Promise<T>): Promise<T | null> {
    const ticket = ++this.seq;
    try {
      const value = await task();
      return ticket === this.seq ? value : null;
    } catch (err) {
      if (ticket === this.seq) throw err;
      return null; // a stale failure is not worth reporting
    }
  }
}
