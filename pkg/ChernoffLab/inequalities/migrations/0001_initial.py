# Generated by Django 5.2 on 2026-10-12 09:30

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="VerificationRun",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                (
                    "command",
                    models.CharField(
                        choices=[("verify", "Verify"), ("sweep", "Sweep")],
                        max_length=20,
                    ),
                ),
                ("config", models.JSONField(default=dict)),
                ("created_at", models.DateTimeField(auto_now_add=True)),
                ("total_reports", models.IntegerField(default=0)),
                ("violations", models.IntegerField(default=0)),
                ("failures", models.IntegerField(default=0)),
                ("min_slack", models.FloatField(blank=True, null=True)),
            ],
            options={
                "ordering": ["-created_at", "-id"],
            },
        ),
        migrations.CreateModel(
            name="SlackRecord",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("position", models.IntegerField()),
                (
                    "inequality_id",
                    models.CharField(
                        choices=[
                            ("T1", "T1"),
                            ("T2", "T2"),
                            ("T3", "T3"),
                            ("C31", "C31"),
                            ("stab35", "stab35"),
                            ("stab37", "stab37"),
                            ("dual_iso", "dual_iso"),
                            ("mixed_iso", "mixed_iso"),
                        ],
                        max_length=20,
                    ),
                ),
                ("k", models.IntegerField(blank=True, null=True)),
                ("lam", models.FloatField(blank=True, null=True)),
                ("mu", models.FloatField(blank=True, null=True)),
                ("alpha", models.FloatField(blank=True, null=True)),
                ("lhs", models.FloatField()),
                ("rhs", models.FloatField()),
                ("slack", models.FloatField()),
                (
                    "verdict",
                    models.CharField(
                        choices=[
                            ("holds", "Holds"),
                            ("equality", "Equality"),
                            ("violated", "Violated"),
                        ],
                        max_length=10,
                    ),
                ),
                ("tolerance", models.FloatField()),
                ("equality_family_match", models.CharField(blank=True, max_length=50)),
                ("stated_family", models.CharField(blank=True, max_length=50)),
                ("oracle_residual", models.FloatField(blank=True, null=True)),
                ("exploratory", models.BooleanField(default=False)),
                ("expected_violation", models.BooleanField(default=False)),
                ("body_index", models.IntegerField(blank=True, null=True)),
                ("partner_index", models.IntegerField(blank=True, null=True)),
                (
                    "run",
                    models.ForeignKey(
                        on_delete=django.db.models.deletion.CASCADE,
                        related_name="records",
                        to="inequalities.verificationrun",
                    ),
                ),
            ],
            options={
                "ordering": ["run", "position"],
                "indexes": [
                    models.Index(
                        fields=["inequality_id", "verdict"],
                        name="inequalities_id_verdict_idx",
                    )
                ],
                "unique_together": {("run", "position")},
            },
        ),
    ]
