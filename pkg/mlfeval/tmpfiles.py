#!/usr/bin/env python
# -*- coding: utf-8 -*-

from pathlib import Path
import tempfile
import shutil
import warnings
import os


class TmpManager(object):
    '''
    A class to manage temporary output files.
    Use the python 'with' statement to clean-up all temporary files after use
    (at the end of the 'with' context).

    Temporary output files are created by the program next to their target,
    moved to their final destination upon commit(), removed otherwise. An
    interrupted sweep therefore never leaves a truncated CSV behind.

    Example:

        with TmpManager(overwrite=True) as tm:
            out = tm.output('results/grid.csv')
            out.write_text(...)
            tm.commit()
    '''
    def __init__(self, overwrite=False, prefix='tmp_mlfeval_'):
        self.__prefix = prefix
        self.__overwrite = overwrite
        self.__list_tmp = []   # list of temporary directories
        self.__list_out = []   # list of (tmpfile, target output)

    def output(self, target) -> Path:
        '''
        Generate a temporary filename that will be moved to target location
        upon commit() (and cleaned up otherwise)
        '''
        target = Path(target)
        if target.exists() and (not self.__overwrite):
            raise IOError(f'Error, {target} exists')

        target.parent.mkdir(parents=True, exist_ok=True)

        # same filesystem as the target, for an atomic replace
        tmpd = Path(tempfile.mkdtemp(dir=target.parent, prefix=self.__prefix))
        self.__list_tmp.append(tmpd)
        tmpfile = tmpd/target.name
        self.__list_out.append((tmpfile, target))

        return tmpfile

    def commit(self):
        '''
        Move all output files to their target location
        '''
        while len(self.__list_out) > 0:
            (tmpfile, target) = self.__list_out.pop(0)

            if target.exists() and (not self.__overwrite):
                raise IOError(f'Error, file {target} exists')
            if not tmpfile.exists():
                raise IOError(f'Error, file {tmpfile} does not exist')
            os.replace(tmpfile, target)

    def __enter__(self):
        return self

    def __exit__(self, type, value, traceback):
        self.__list_out.clear()
        while len(self.__list_tmp) > 0:
            tmpd = self.__list_tmp.pop(0)
            if tmpd.exists():
                shutil.rmtree(tmpd)
            else:
                warnings.warn(f'TmpManager.__exit__: Directory {tmpd} has already been deleted')
