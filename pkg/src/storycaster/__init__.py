"""Storycaster: a room-scale co-creative storytelling engine.

Subpackages:
  geometry  -- depth fusion, panoramic depth, projection mapping
  backends  -- generation capabilities (deterministic mocks, remote HTTP)
  audio     -- playback registry, resampling, panning, offline mixing
  story     -- the narrator state machine and its prompt machinery
  objects   -- mask registry, object mappings, visual matching
  server    -- JSON-RPC tool server (stdio and WebSocket)
"""

__version__ = "0.1.0"
