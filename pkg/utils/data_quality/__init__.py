# -*- coding: utf-8 -*-
from .invariant_checker import InvariantCheck, InvariantChecker
