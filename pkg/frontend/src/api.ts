// Thin fetch client for the planning service.

import { PlanRecord, PlanRequest, RefPathDoc, WorldPayload } from "./types";

export class ServiceError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function expectOk(resp: Response): Promise<Response> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // keep statusText
    }
    throw new ServiceError(resp.status, detail);
  }
  return resp;
}

export class PlannerClient {
  constructor(private base: string = "") {}

  async world(): Promise<WorldPayload> {
    const resp = await expectOk(await fetch(`${this.base}/world`));
    return resp.json();
  }

  async listRefPaths(): Promise<RefPathDoc[]> {
    const resp = await expectOk(await fetch(`${this.base}/refpaths`));
    return (await resp.json()).paths;
  }

  async postRefPath(polyline: [number, number, number][], id?: string):
      Promise<RefPathDoc> {
    const resp = await expectOk(await fetch(`${this.base}/refpaths`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ id, polyline }),
    }));
    return resp.json();
  }

  async deleteRefPath(id: string): Promise<void> {
    await expectOk(await fetch(`${this.base}/refpaths/${id}`, { method: "DELETE" }));
  }

  async plan(request: PlanRequest): Promise<PlanRecord> {
    const resp = await expectOk(await fetch(`${this.base}/plan`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    }));
    return resp.json();
  }

  async heatmapCsv(planId: string, index: number): Promise<string> {
    const resp = await expectOk(
      await fetch(`${this.base}/heuristic/${planId}/${index}`));
    return resp.text();
  }
}
