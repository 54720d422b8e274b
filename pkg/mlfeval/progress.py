#!/usr/bin/env python
# -*- coding: utf-8 -*-

'''
Progress display for grid sweeps and verification suites

The bar is drawn on stderr so that CSV written to stdout stays clean.
'''

import sys

from progressbar import ProgressBar, ETA, Percentage, Bar, FormatLabel


def Progress(vmax, activate=True, fd=sys.stderr):
    '''
    Returns a progress bar object with methods update(value, message) and
    finish(message); a silent one if not `activate`
    '''
    if not activate:
        return ProgressInvisible()
    return ProgressStderr(vmax, fd=fd)


class ProgressInvisible(object):
    '''
    A progress bar that does nothing
    '''
    def update(self, value, message=''):
        pass

    def finish(self, message=''):
        pass


class ProgressStderr(object):

    def __init__(self, vmax, fd=sys.stderr):
        '''
        Progress bar from library 'progressbar2'

        vmax: maximum value of the progress bar
        '''
        self.vmax = vmax
        self.label = FormatLabel('')
        self.pbar = ProgressBar(widgets=[self.label, ' ', Percentage(), Bar(), ETA()],
                                max_value=vmax, fd=fd).start()

    def update(self, value, message=''):
        value = min(value, self.vmax)  # don't exceed max
        self.label.format = message
        self.pbar.update(value)

    def finish(self, message=''):
        self.label.format = message
        self.pbar.finish()
