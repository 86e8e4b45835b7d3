/** Failure carrying the process exit code: 1 data problems, 2 bad usage. */
export class SidecarError extends Error {
  readonly exitCode: number;

  constructor(message: string, exitCode = 1) {
    super(message);
    this.name = "SidecarError";
    this.exitCode = exitCode;
  }
}
