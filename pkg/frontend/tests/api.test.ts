import { describe, expect, it } from 'vitest';

import { ApiClient, ServiceError } from '../src/api';
import { COMPLIANT_ANALYSIS, FakeService } from './fakeService';

const DOC = {
  n: 3,
  upper: [
    [1, 2, 2],
    [1, 3, 4],
    [2, 3, 2],
  ] as Array<[number, number, number]>,
};

describe('ApiClient', () => {
  it('uploads a matrix and fetches its analysis', async () => {
    const service = new FakeService();
    const api = new ApiClient('', service.fetch);
    const created = await api.uploadMatrix(DOC);
    expect(created.id).toBe('m1');
    const analysis = await api.getAnalysis(created.id);
    expect(analysis).toEqual(COMPLIANT_ANALYSIS);
    expect(service.requests.map((r) => r.path)).toEqual([
      '/matrices',
      '/matrices/m1/analysis',
    ]);
  });

  it('sends prioritize options as the request body', async () => {
    const service = new FakeService();
    const api = new ApiClient('', service.fetch);
    const created = await api.uploadMatrix(DOC);
    await api.prioritize(created.id, { method: 'llsm', mnv: true });
    const request = service.requests.at(-1);
    expect(request?.body).toEqual({ method: 'llsm', mnv: true });
  });

  it('prefixes the base URL', async () => {
    const service = new FakeService();
    const api = new ApiClient('http://svc:8000', service.fetch);
    await api.uploadMatrix(DOC).catch(() => undefined);
    expect(service.requests[0]?.path).toBe('http://svc:8000/matrices');
  });

  it('creates sessions and forwards 1-based pins untouched', async () => {
    const service = new FakeService();
    const api = new ApiClient('', service.fetch);
    const session = await api.createSession(DOC);
    expect(session.id).toBe('s1');
    const pins = await api.setPins(session.id, [[1, 2, 6]]);
    expect(pins.pins).toEqual([[1, 2, 6]]);
    const request = service.requests.at(-1);
    expect(request?.body).toEqual({ pins: [[1, 2, 6]] });
  });

  it('raises ServiceError with code, message, and details on non-2xx', async () => {
    const service = new FakeService({
      revise: {
        error: {
          status: 422,
          body: {
            code: 'RevisionInfeasible',
            message: 'pinned judgments are contradictory',
            details: { pins: [[1, 2], [1, 3]] },
          },
        },
      },
    });
    const api = new ApiClient('', service.fetch);
    const session = await api.createSession(DOC);
    const failure = api.revise(session.id);
    await expect(failure).rejects.toBeInstanceOf(ServiceError);
    await failure.catch((error: ServiceError) => {
      expect(error.status).toBe(422);
      expect(error.code).toBe('RevisionInfeasible');
      expect(error.details['pins']).toEqual([[1, 2], [1, 3]]);
    });
  });

  it('survives error bodies that are not JSON objects', async () => {
    const api = new ApiClient('', () =>
      Promise.resolve({
        ok: false,
        status: 500,
        json: () => Promise.reject(new Error('not json')),
      }),
    );
    await expect(api.getAnalysis('x')).rejects.toMatchObject({
      status: 500,
      code: 'Unknown',
    });
  });
});
