# -*- coding: utf-8 -*-
from .experiment_job import ExperimentJob
