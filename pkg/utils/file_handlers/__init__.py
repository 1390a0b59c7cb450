# -*- coding: utf-8 -*-
from .report_writer import ExperimentReport, FileHandler, ReportWriter, round_significant
