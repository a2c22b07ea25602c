import { spawnSync } from "node:child_process";

/** The engine binary; override with EITKIT_BIN (e.g. a venv path). */
export function engineBinary(): string {
  return process.env.EITKIT_BIN ?? "eitkit";
}

export interface RunResult {
  status: number;
  stdout: string;
  stderr: string;
}

export function runEngine(args: string[]): RunResult {
  const proc = spawnSync(engineBinary(), args, { encoding: "utf-8" });
  if (proc.error) {
    throw new Error(
      `failed to launch engine '${engineBinary()}': ${proc.error.message} ` +
        "(set EITKIT_BIN to the eitkit executable)"
    );
  }
  return { status: proc.status ?? -1, stdout: proc.stdout, stderr: proc.stderr };
}

export function runEngineOrThrow(args: string[]): RunResult {
  const res = runEngine(args);
  if (res.status !== 0) {
    const detail = (res.stderr || res.stdout).trim();
    throw new Error(`engine exited with code ${res.status}: ${detail}`);
  }
  return res;
}
