"""
Persisted verification runs.

A VerificationRun is one `verify` or `sweep` invocation saved with --save;
each of its SlackReports becomes a SlackRecord row. Content files exported
from a run never carry the timestamps kept here.
"""

from typing import Dict, List, Optional, Sequence

from django.db import models, transaction

from inequalities.reports import InequalityId, SlackReport, Verdict


class VerificationRun(models.Model):
    """
    One saved invocation of a lab command and its summary counts.
    """
    COMMAND_CHOICES = [
        ('verify', 'Verify'),
        ('sweep', 'Sweep'),
    ]

    command = models.CharField(max_length=20, choices=COMMAND_CHOICES)
    config = models.JSONField(default=dict)  # command options or the validated config file
    created_at = models.DateTimeField(auto_now_add=True)

    # Summary
    total_reports = models.IntegerField(default=0)
    violations = models.IntegerField(default=0)
    failures = models.IntegerField(default=0)
    min_slack = models.FloatField(null=True, blank=True)

    class Meta:
        ordering = ['-created_at', '-id']

    def __str__(self):
        return f"{self.command} run {self.pk}: {self.total_reports} reports, {self.violations} violations"

    @classmethod
    def record(cls, command: str, reports: Sequence[SlackReport], config: Optional[Dict] = None) -> 'VerificationRun':
        """Save a run and all of its reports in one transaction."""
        with transaction.atomic():
            run = cls.objects.create(
                command=command,
                config=config or {},
                total_reports=len(reports),
                violations=sum(1 for report in reports if report.verdict is Verdict.VIOLATED),
                failures=sum(1 for report in reports if report.is_failure),
                min_slack=min((report.slack for report in reports), default=None),
            )
            SlackRecord.objects.bulk_create(
                SlackRecord.from_report(run, position, report) for position, report in enumerate(reports)
            )
        return run

    def slack_reports(self) -> List[SlackReport]:
        return [record.to_report() for record in self.records.order_by('position')]


class SlackRecord(models.Model):
    """
    A single SlackReport of a saved run.
    """
    VERDICT_CHOICES = [(verdict.value, verdict.value.title()) for verdict in Verdict]
    INEQUALITY_CHOICES = [(inequality.value, inequality.value) for inequality in InequalityId]

    run = models.ForeignKey(VerificationRun, on_delete=models.CASCADE, related_name='records')
    position = models.IntegerField()  # order within the run
    inequality_id = models.CharField(max_length=20, choices=INEQUALITY_CHOICES)

    # Parameters
    k = models.IntegerField(null=True, blank=True)
    lam = models.FloatField(null=True, blank=True)
    mu = models.FloatField(null=True, blank=True)
    alpha = models.FloatField(null=True, blank=True)

    # Result
    lhs = models.FloatField()
    rhs = models.FloatField()
    slack = models.FloatField()
    verdict = models.CharField(max_length=10, choices=VERDICT_CHOICES)
    tolerance = models.FloatField()
    equality_family_match = models.CharField(max_length=50, blank=True)
    stated_family = models.CharField(max_length=50, blank=True)
    oracle_residual = models.FloatField(null=True, blank=True)
    exploratory = models.BooleanField(default=False)
    expected_violation = models.BooleanField(default=False)

    # Ensemble positions
    body_index = models.IntegerField(null=True, blank=True)
    partner_index = models.IntegerField(null=True, blank=True)

    class Meta:
        unique_together = ['run', 'position']
        ordering = ['run', 'position']
        indexes = [
            models.Index(fields=['inequality_id', 'verdict'], name='inequalities_id_verdict_idx'),
        ]

    def __str__(self):
        return f"{self.inequality_id} {self.verdict} (slack {self.slack:.3e})"

    @classmethod
    def from_report(cls, run: VerificationRun, position: int, report: SlackReport) -> 'SlackRecord':
        return cls(
            run=run,
            position=position,
            inequality_id=report.inequality_id.value,
            k=report.k,
            lam=report.lam,
            mu=report.mu,
            alpha=report.alpha,
            lhs=report.lhs,
            rhs=report.rhs,
            slack=report.slack,
            verdict=report.verdict.value,
            tolerance=report.tolerance,
            equality_family_match=report.equality_family_match or '',
            stated_family=report.stated_family or '',
            oracle_residual=report.oracle_residual,
            exploratory=report.exploratory,
            expected_violation=report.expected_violation,
            body_index=report.body_index,
            partner_index=report.partner_index,
        )

    def to_report(self) -> SlackReport:
        return SlackReport(
            inequality_id=InequalityId(self.inequality_id),
            lhs=self.lhs,
            rhs=self.rhs,
            slack=self.slack,
            verdict=Verdict(self.verdict),
            tolerance=self.tolerance,
            k=self.k,
            lam=self.lam,
            mu=self.mu,
            alpha=self.alpha,
            equality_family_match=self.equality_family_match or None,
            stated_family=self.stated_family or None,
            oracle_residual=self.oracle_residual,
            exploratory=self.exploratory,
            expected_violation=self.expected_violation,
            body_index=self.body_index,
            partner_index=self.partner_index,
        )
