#!/usr/bin/env python3
"""
Append-only JSON lines store for search hits and resumable cursors.
"""

import json
import logging
import os
import time

__all__ = ['ResultStore']

logger = logging.getLogger(__name__)


class ResultStore:
    """
    A JSONL file of records {cmd, params, hit, report, cursor, ts}.

    Hit records carry a verified hit in report; a record with hit None closes
    a run and carries its summary. Only the process that owns the store
    writes to it.

    Parameters
    ----------
    path : str
        The file, created on first write.
    """
    def __init__(self, path):
        self.path = os.path.expanduser(path)

    def records(self, cmd=None, params=None):
        """
        Yields stored records, optionally only those of one search.
        """
        if not os.path.exists(self.path):
            return
        with open(self.path, 'r') as f:
            for line in f:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                if cmd is not None and rec.get('cmd') != cmd:
                    continue
                if params is not None and rec.get('params') != params:
                    continue
                yield rec

    def last_cursor(self, cmd, params):
        """
        Returns the cursor of the latest record of the search, or None.
        """
        cursor = None
        for rec in self.records(cmd, params):
            if rec.get('cursor') is not None:
                cursor = rec['cursor'] if cursor is None else max(
                    cursor, rec['cursor'])
        return cursor

    def append(self, cmd, params, hit, report, cursor):
        rec = {'cmd': cmd, 'params': params, 'hit': hit, 'report': report,
               'cursor': cursor, 'ts': time.time()}
        last = self.last_cursor(cmd, params)
        if last is not None and cursor is not None and cursor < last:
            raise ValueError('Cursor %d precedes stored cursor %d.'
                             % (cursor, last))
        directory = os.path.dirname(self.path)
        if directory and not os.path.exists(directory):
            os.makedirs(directory)
        with open(self.path, 'a') as f:
            f.write(json.dumps(rec, sort_keys=True) + '\n')
        return rec

    def record_search(self, cmd, params, result, start):
        """
        Stores the hits of a search run that began at cursor start.

        Nothing is written when the run did not advance, so resuming a
        finished search leaves the store unchanged.

        Returns
        -------
        int
            Number of records written.
        """
        if result.cursor <= start and not result.hits:
            return 0
        written = 0
        for cover, report in result:
            self.append(cmd, params, cover.to_dict(), report, result.cursor)
            written += 1
        summary = {k: v for k, v in result.to_dict().items() if k != 'hits'}
        self.append(cmd, params, None, summary, result.cursor)
        logger.info('Stored %d hits of %s up to cursor %d.', written, cmd,
                    result.cursor)
        return written + 1

    def record_hit(self, cmd, params, hit, report):
        """
        Stores a single find result unless the search is already stored.
        """
        for _ in self.records(cmd, params):
            return 0
        self.append(cmd, params, hit, report, None)
        return 1
